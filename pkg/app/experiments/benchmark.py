"""
Monte Carlo benchmark driver: repeated train/test draws (simulation setups)
or repeated stratified partitions (real data), a roster of classifiers, and
per-replication test misclassification frequencies.

Replication r only ever sees the streams derived from (seed, r), so the
report does not depend on the worker count or on completion order.
"""
from typing import Dict, List, Optional, Sequence

from joblib import Parallel, delayed

from app.classifiers.factory import ClassifierFactory
from app.core.exceptions import DepthKnnError
from app.core.logging_config import get_logger
from app.core.rng import RngSeed
from app.experiments.cv import with_selected_k
from app.experiments.setups import generate
from app.ingest.partition import partition
from app.models.classification import ClassifierConfig, ClassifierKind
from app.models.depth import DepthKind, DepthSpec
from app.models.experiment import (
    BENCHMARK_BETAS,
    BenchmarkConfig,
    ExperimentReport,
    ReplicationRecord,
    summarize,
)
from app.models.sample import LabeledSample
from app.observability.decorators import log_duration

logger = get_logger("app.experiments.benchmark")

SIMULATION_DEPTHS = (DepthKind.HALFSPACE, DepthKind.SIMPLICIAL, DepthKind.MAHALANOBIS)


def simulation_roster(
    betas: Sequence[float] = BENCHMARK_BETAS, smoothed_starts: Optional[int] = None
) -> tuple[ClassifierConfig, ...]:
    """LDA/QDA, kNN, kNNaff and depth-kNN per beta, exact DD (m = 1, 2) and smoothed DD (m = 1, 2, 3)"""
    roster: List[ClassifierConfig] = [
        ClassifierConfig(method=ClassifierKind.LDA),
        ClassifierConfig(method=ClassifierKind.QDA),
    ]
    for beta in betas:
        roster.append(ClassifierConfig(method=ClassifierKind.KNN, beta=beta))
        roster.append(ClassifierConfig(method=ClassifierKind.KNNAFF, beta=beta))
        for kind in SIMULATION_DEPTHS:
            roster.append(ClassifierConfig(method=ClassifierKind.DKNN, beta=beta, depth=DepthSpec(kind=kind)))
    extra = {} if smoothed_starts is None else {"starts": smoothed_starts}
    for kind in SIMULATION_DEPTHS:
        for degree in (1, 2):
            roster.append(ClassifierConfig(method=ClassifierKind.DD, depth=DepthSpec(kind=kind), degree=degree))
        for degree in (1, 2, 3):
            roster.append(
                ClassifierConfig(
                    method=ClassifierKind.DD, depth=DepthSpec(kind=kind), degree=degree, smoothed=True, **extra
                )
            )
    return tuple(roster)


def real_data_roster() -> tuple[ClassifierConfig, ...]:
    """Real-data comparison: k chosen by leave-one-out for every neighbor method"""
    halfspace = DepthSpec(kind=DepthKind.HALFSPACE)
    mahalanobis = DepthSpec(kind=DepthKind.MAHALANOBIS)
    return (
        ClassifierConfig(method=ClassifierKind.LDA, name="LDA"),
        ClassifierConfig(method=ClassifierKind.QDA, name="QDA"),
        ClassifierConfig(method=ClassifierKind.KNN, name="kNN"),
        ClassifierConfig(method=ClassifierKind.KNNAFF, name="kNNaff"),
        ClassifierConfig(method=ClassifierKind.DKNN, depth=halfspace, name="DH-kNN"),
        ClassifierConfig(method=ClassifierKind.DKNN, depth=mahalanobis, name="DM-kNN"),
        ClassifierConfig(method=ClassifierKind.DD, depth=halfspace, degree=1, name="DDH (m=1)"),
        ClassifierConfig(method=ClassifierKind.DD, depth=halfspace, degree=2, name="DDH (m=2)"),
        ClassifierConfig(method=ClassifierKind.DD, depth=mahalanobis, degree=1, name="DDM (m=1)"),
        ClassifierConfig(method=ClassifierKind.DD, depth=mahalanobis, degree=2, name="DDM (m=2)"),
    )


def evaluate_split(
    train: LabeledSample,
    test: LabeledSample,
    roster: Sequence[ClassifierConfig],
    seed: RngSeed,
    replication: int = 0,
) -> List[ReplicationRecord]:
    """
    Fit every roster entry on `train` and score it on `test`. Neighbor
    methods without k or beta get k by leave-one-out. A failing entry is
    recorded with its error message instead of a frequency.
    """
    records = []
    for config in roster:
        name = config.display_name()
        k = None
        try:
            config = with_selected_k(train, config, seed.child("loocv", name))
            k = config.k
            if config.method == ClassifierKind.DD:
                config = config.model_copy(update={"seed": seed.child("fit", name).stream_id})
            classifier = ClassifierFactory.create(config).fit(train)
            k = getattr(classifier, "k", k)
            error = classifier.error_rate(test, seed.child("ties", name))
            records.append(ReplicationRecord(replication=replication, classifier=name, error_percent=error, k=k))
        except (DepthKnnError, ArithmeticError, ValueError) as e:
            logger.warning(f"Replication {replication}: {name} failed: {e}")
            records.append(ReplicationRecord(replication=replication, classifier=name, k=k, failure=str(e)))
    return records


def run_replication(
    config: BenchmarkConfig, roster: Sequence[ClassifierConfig], replication: int
) -> List[ReplicationRecord]:
    seed = RngSeed(config.seed).child("replication", replication)
    train = generate(config.setup, config.n_train, seed.child("train"))
    test = generate(config.setup, config.n_test, seed.child("test"))
    return evaluate_split(train, test, roster, seed, replication)


def _assemble(
    name: str, echo: Dict, roster: Sequence[ClassifierConfig], chunks: List[List[ReplicationRecord]]
) -> ExperimentReport:
    records = sorted(
        (record for chunk in chunks for record in chunk),
        key=lambda r: r.replication,
    )
    classifiers = [c.display_name() for c in roster]
    return ExperimentReport(name=name, config=echo, records=records, summaries=summarize(records, classifiers))


@log_duration("experiments.run_benchmark", level="info")
def run_benchmark(config: BenchmarkConfig) -> ExperimentReport:
    """Misclassification frequencies of the roster over independent replications"""
    roster = config.roster or simulation_roster(config.betas)
    logger.info(
        f"Benchmark {config.setup.value}: {config.replications} replications, "
        f"{len(roster)} classifiers, n_train={config.n_train}, n_test={config.n_test}, "
        f"seed={config.seed}, workers={config.workers}"
    )
    chunks = Parallel(n_jobs=config.workers)(
        delayed(run_replication)(config, roster, r) for r in range(config.replications)
    )
    echo = config.echo()
    echo["roster"] = [c.model_dump(mode="json") for c in roster]
    return _assemble(config.setup.value, echo, roster, chunks)


def _run_partition(
    sample: LabeledSample,
    class_sizes: Dict[int, int],
    roster: Sequence[ClassifierConfig],
    seed: int,
    replication: int,
) -> List[ReplicationRecord]:
    stream = RngSeed(seed).child("partition", replication)
    train, test = partition(sample, class_sizes, stream)
    return evaluate_split(train, test, roster, stream, replication)


@log_duration("experiments.run_partition_benchmark", level="info")
def run_partition_benchmark(
    sample: LabeledSample,
    class_sizes: Dict[int, int],
    partitions: int,
    seed: int,
    roster: Optional[Sequence[ClassifierConfig]] = None,
    workers: int = 1,
    name: str = "partitions",
) -> ExperimentReport:
    """Repeated stratified train/test partitions of one labeled dataset"""
    roster = tuple(roster or real_data_roster())
    logger.info(f"Partition benchmark {name}: {partitions} partitions, class sizes {class_sizes}, seed={seed}")
    chunks = Parallel(n_jobs=workers)(
        delayed(_run_partition)(sample, class_sizes, roster, seed, p) for p in range(partitions)
    )
    echo = {
        "dataset": name,
        "n": sample.n,
        "class_sizes": {str(k): v for k, v in class_sizes.items()},
        "partitions": partitions,
        "seed": seed,
        "roster": [c.model_dump(mode="json") for c in roster],
    }
    return _assemble(name, echo, roster, chunks)


@log_duration("experiments.run_fixed_split", level="info")
def run_fixed_split(
    train: LabeledSample,
    test: LabeledSample,
    seed: int,
    roster: Optional[Sequence[ClassifierConfig]] = None,
    name: str = "fixed-split",
) -> ExperimentReport:
    """One evaluation on a given train/test split"""
    roster = tuple(roster or real_data_roster())
    records = evaluate_split(train, test, roster, RngSeed(seed).child("fixed-split"), 0)
    echo = {
        "dataset": name,
        "n_train": train.n,
        "n_test": test.n,
        "seed": seed,
        "roster": [c.model_dump(mode="json") for c in roster],
    }
    return _assemble(name, echo, roster, [records])
