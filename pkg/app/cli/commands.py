"""
Subcommands of the depthknn CLI. Each has a `configure_*` function adding
its flags and a `run_*` handler returning the files it read and wrote.
"""
import argparse
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import uvicorn

from app.classifiers.factory import ClassifierFactory
from app.cli.options import (
    CommandResult,
    add_depth_options,
    add_header_option,
    add_seed_option,
    depth_spec_from,
    parse_floats,
    parse_ints,
    parse_names,
    parse_point,
)
from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logging_config import get_logger
from app.core.rng import RngSeed
from app.depth.factory import get_depth
from app.estimators.density import knn_density_estimate
from app.estimators.regression import knn_regress
from app.experiments.bayes import bayes_risk
from app.experiments.benchmark import (
    real_data_roster,
    run_benchmark,
    run_fixed_split,
    run_partition_benchmark,
    simulation_roster,
)
from app.experiments.cv import loocv_errors, with_selected_k
from app.experiments.setups import generate
from app.ingest.datasets import TRANSFUSION_TRAIN_SIZES
from app.ingest.fetch import dataset_paths, fetch_dataset
from app.ingest.loaders import load_ripley, load_transfusion
from app.models.classification import ClassifierConfig, ClassifierKind
from app.models.dataset import DatasetName
from app.models.estimation import EstimationMode
from app.models.experiment import BENCHMARK_BETAS, BenchmarkConfig, ExperimentReport, SetupId
from app.models.neighborhood import k_from_beta
from app.models.sample import LabeledSample, RegressionSample, as_points
from app.neighbors.ordering import outward_ordering
from app.utils.csv_utils import format_rows_csv, read_points_csv, write_rows_csv

logger = get_logger("app.cli.commands")


def _emit(rows: List[Dict[str, Any]], output: Optional[Path]) -> List[Path]:
    """Write rows to `output`, or print them when no output file is given"""
    if output is None:
        print(format_rows_csv(rows), end="")
        return []
    write_rows_csv(rows, output)
    return [output]


def _write_json(data: Dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def _point_rows(points: np.ndarray, labels: Optional[np.ndarray] = None) -> List[Dict[str, Any]]:
    rows = []
    for i, point in enumerate(points):
        row: Dict[str, Any] = {f"x{j + 1}": float(v) for j, v in enumerate(point)}
        if labels is not None:
            row["label"] = int(labels[i])
        rows.append(row)
    return rows


def _read_labeled(path: Path, header: Optional[bool]) -> LabeledSample:
    points, labels = read_points_csv(path, header, labeled=True)
    return LabeledSample(points, labels)


def _report_outputs(report: ExperimentReport, output: Path, summary: Optional[Path]) -> List[Path]:
    write_rows_csv(report.long_rows(), output)
    summary = summary or output.with_suffix(".summary.json")
    _write_json(report.summary_json(), summary)
    for row in report.summaries:
        mean = "failed" if row.mean is None else f"{row.mean:.2f}"
        sd = "" if row.sd is None else f" (sd {row.sd:.2f})"
        print(f"{row.classifier}: {mean}{sd}")
    return [output, summary]


# depth


def configure_depth(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--points", type=Path, required=True, help="reference sample CSV")
    parser.add_argument("--unlabeled", action="store_true", help="the CSV has no label column")
    add_header_option(parser)
    add_depth_options(parser)
    parser.add_argument(
        "--query",
        type=parse_point,
        action="append",
        help="x1,...,xd (repeatable); without it every sample point is evaluated",
    )
    parser.add_argument(
        "--output", type=Path, help="CSV of (index, depth); stdout when omitted, with no run manifest"
    )


def run_depth(args: argparse.Namespace) -> CommandResult:
    points, _ = read_points_csv(args.points, args.header, labeled=not args.unlabeled)
    queries = as_points(args.query) if args.query else points
    depths = get_depth(depth_spec_from(args)).depth_all(queries, points)
    rows = [{"index": i, "depth": float(value)} for i, value in enumerate(depths)]
    return CommandResult(inputs=[args.points], outputs=_emit(rows, args.output), seed=args.depth_seed)


# neighbors


def configure_neighbors(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--points", type=Path, required=True, help="sample CSV")
    parser.add_argument("--unlabeled", action="store_true", help="the CSV has no label column")
    add_header_option(parser)
    add_depth_options(parser)
    parser.add_argument("--query", type=parse_point, required=True, help="x1,...,xd")
    size = parser.add_mutually_exclusive_group(required=True)
    size.add_argument("--k", type=int, help="neighbors to reach")
    size.add_argument("--beta", type=float, help="fraction of the sample to reach (k = ceil(beta n))")
    parser.add_argument(
        "--output", type=Path, help="CSV of (group, index, depth); stdout when omitted, with no run manifest"
    )


def run_neighbors(args: argparse.Namespace) -> CommandResult:
    points, _ = read_points_csv(args.points, args.header, labeled=not args.unlabeled)
    ordering = outward_ordering(args.query, points, depth_spec_from(args))
    k = args.k if args.k is not None else k_from_beta(args.beta, ordering.n)
    neighborhood = ordering.neighborhood(k)
    rows = [
        {"group": g, "index": int(index), "depth": float(ordering.depths[g])}
        for g in range(neighborhood.groups_used)
        for index in ordering.groups[g]
    ]
    logger.info(f"k={k}: {neighborhood.realized_count} neighbors in {neighborhood.groups_used} depth groups")
    return CommandResult(inputs=[args.points], outputs=_emit(rows, args.output), seed=args.depth_seed)


# classify


def configure_classify(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--train", type=Path, required=True, help="labeled training CSV")
    parser.add_argument("--test", type=Path, required=True, help="test CSV")
    parser.add_argument("--unlabeled-test", action="store_true", help="the test CSV has no label column")
    add_header_option(parser)
    parser.add_argument("--method", choices=ClassifierFactory.supported_methods(), required=True)
    add_depth_options(parser)
    size = parser.add_mutually_exclusive_group()
    size.add_argument("--k", type=int, help="neighbors (default: chosen by leave-one-out)")
    size.add_argument("--beta", type=float, help="neighbors as a fraction of the training size")
    parser.add_argument("--m", type=int, default=1, help="DD polynomial degree")
    parser.add_argument("--smoothed", action="store_true", help="fit the DD curve by the logistic surrogate")
    parser.add_argument("--t", type=float, help=f"logistic sharpness (default: {settings.DD_SMOOTH_T})")
    parser.add_argument("--starts", type=int, help=f"random starts (default: {settings.DD_SMOOTH_STARTS})")
    parser.add_argument("--label", type=int, default=0, choices=(0, 1), help="label of the constant classifier")
    add_seed_option(parser)
    parser.add_argument(
        "--output", type=Path, help="predictions CSV of (index, label); stdout when omitted, with no run manifest"
    )


def run_classify(args: argparse.Namespace) -> CommandResult:
    train = _read_labeled(args.train, args.header)
    test_points, test_labels = read_points_csv(args.test, args.header, labeled=not args.unlabeled_test)
    seed = RngSeed(args.seed)
    options: Dict[str, Any] = {
        "method": ClassifierKind(args.method),
        "k": args.k,
        "beta": args.beta,
        "depth": depth_spec_from(args),
        "degree": args.m,
        "smoothed": args.smoothed,
        "seed": seed.child("fit").stream_id,
        "label": args.label,
    }
    if args.t is not None:
        options["t"] = args.t
    if args.starts is not None:
        options["starts"] = args.starts
    config = ClassifierConfig(**options)

    config = with_selected_k(train, config, seed.child("loocv"))

    classifier = ClassifierFactory.create(config).fit(train)
    predictions = classifier.predict(test_points, seed.child("ties"))
    rows = [{"index": i, "label": int(label)} for i, label in enumerate(predictions)]
    outputs = _emit(rows, args.output)
    if test_labels is not None:
        errors = int(np.sum(predictions != test_labels))
        rate = 100.0 * errors / len(test_labels)
        print(f"{classifier.name}: misclassification rate {rate:.2f}% ({errors}/{len(test_labels)})")
    return CommandResult(inputs=[args.train, args.test], outputs=outputs, seed=args.seed)


# estimate


def configure_estimate(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--task", choices=("regress", "density"), required=True)
    parser.add_argument(
        "--points",
        type=Path,
        required=True,
        help="sample CSV; for regression the last column is the response",
    )
    parser.add_argument("--queries", type=Path, required=True, help="CSV of query points")
    add_header_option(parser)
    parser.add_argument("--mode", choices=[m.value for m in EstimationMode], default=EstimationMode.EUCLIDEAN.value)
    add_depth_options(parser)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument(
        "--budget",
        type=int,
        help=f"Monte Carlo draws for depth-mode volumes (default: {settings.MC_VOLUME_BUDGET})",
    )
    add_seed_option(parser)
    parser.add_argument(
        "--output", type=Path, help="CSV of per-query estimates; stdout when omitted, with no run manifest"
    )


def run_estimate(args: argparse.Namespace) -> CommandResult:
    values, _ = read_points_csv(args.points, args.header, labeled=False)
    queries, _ = read_points_csv(args.queries, args.header, labeled=False)
    spec = depth_spec_from(args)
    rows: List[Dict[str, Any]] = []
    if args.task == "regress":
        if values.shape[1] < 2:
            raise ValidationError(f"{args.points}: regression needs feature columns and a response column")
        sample = RegressionSample(values[:, :-1], values[:, -1])
        for i, query in enumerate(as_points(queries, sample.points.shape[1])):
            rows.append({"index": i, "estimate": knn_regress(query, sample, args.k, args.mode, spec)})
    else:
        seed = RngSeed(args.seed)
        for i, query in enumerate(as_points(queries, values.shape[1])):
            estimate = knn_density_estimate(
                query, values, args.k, args.mode, spec, args.budget, seed.child("query", i)
            )
            rows.append(
                {
                    "index": i,
                    "estimate": estimate.value,
                    "volume": estimate.volume.value,
                    "standard_error": estimate.volume.standard_error,
                    "realized_count": estimate.volume.realized_count,
                }
            )
    return CommandResult(inputs=[args.points, args.queries], outputs=_emit(rows, args.output), seed=args.seed)


# simulate / bayes-risk


def configure_simulate(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--setup", type=SetupId.parse, required=True, help="setup id or number 1-6")
    parser.add_argument("--n", type=int, required=True, help="sample size")
    add_seed_option(parser)
    parser.add_argument(
        "--output", type=Path, help="labeled sample CSV; stdout when omitted, with no run manifest"
    )


def run_simulate(args: argparse.Namespace) -> CommandResult:
    sample = generate(args.setup, args.n, RngSeed(args.seed).child("simulate"))
    rows = _point_rows(sample.points, sample.labels)
    return CommandResult(outputs=_emit(rows, args.output), seed=args.seed)


def configure_bayes_risk(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--setup", type=SetupId.parse, required=True, help="setup id or number 1-6")
    parser.add_argument("--budget", type=int, default=1_000_000, help="Monte Carlo draws")
    add_seed_option(parser)
    parser.add_argument("--output", type=Path, help="JSON file with the estimate; no run manifest without it")


def run_bayes_risk(args: argparse.Namespace) -> CommandResult:
    estimate = bayes_risk(args.setup, args.budget, args.seed)
    print(
        f"{args.setup.value}: Bayes risk {estimate.risk:.6f} "
        f"(standard error {estimate.standard_error:.6f}, {estimate.draws} draws)"
    )
    outputs = []
    if args.output is not None:
        data = {"setup": args.setup.value, **estimate.model_dump()}
        outputs.append(_write_json(data, args.output))
    return CommandResult(outputs=outputs, seed=args.seed)


# benchmark


def configure_benchmark(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--setup", type=SetupId.parse, required=True, help="setup id or number 1-6")
    parser.add_argument("--replications", type=int, default=250)
    parser.add_argument("--n-train", type=int, default=200)
    parser.add_argument("--n-test", type=int, default=100)
    parser.add_argument(
        "--betas",
        type=parse_floats,
        default=list(BENCHMARK_BETAS),
        help="comma-separated neighborhood fractions (default: 0.01,0.05,0.10,0.40)",
    )
    parser.add_argument(
        "--methods",
        type=parse_names,
        help=f"comma-separated subset of {[kind.value for kind in ClassifierKind]} (default: all)",
    )
    parser.add_argument("--starts", type=int, help="random starts of the smoothed DD fits")
    parser.add_argument("--workers", type=int, default=settings.BENCHMARK_WORKERS)
    add_seed_option(parser)
    parser.add_argument(
        "--output", type=Path, required=True, help="long-format CSV, one row per replication and classifier"
    )
    parser.add_argument("--summary", type=Path, help="JSON summary (default: output path with a .summary.json suffix)")


def _filter_methods(roster: Sequence[ClassifierConfig], methods: Optional[List[str]]) -> tuple[ClassifierConfig, ...]:
    if not methods:
        return tuple(roster)
    unknown = set(methods) - {kind.value for kind in ClassifierKind}
    if unknown:
        raise ValidationError(f"unknown methods {sorted(unknown)}")
    kept = tuple(c for c in roster if c.method.value in methods)
    if not kept:
        raise ValidationError(f"no classifier of the roster uses methods {methods}")
    return kept


def run_benchmark_command(args: argparse.Namespace) -> CommandResult:
    roster = _filter_methods(simulation_roster(args.betas, args.starts), args.methods)
    config = BenchmarkConfig(
        setup=args.setup,
        n_train=args.n_train,
        n_test=args.n_test,
        replications=args.replications,
        betas=tuple(args.betas),
        roster=roster,
        seed=args.seed,
        workers=args.workers,
    )
    report = run_benchmark(config)
    return CommandResult(outputs=_report_outputs(report, args.output, args.summary), seed=args.seed)


# cv


def configure_cv(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--train", type=Path, required=True, help="labeled training CSV")
    add_header_option(parser)
    parser.add_argument(
        "--method",
        choices=[kind.value for kind in ClassifierKind if kind.uses_neighbors],
        required=True,
    )
    add_depth_options(parser)
    parser.add_argument("--grid", type=parse_ints, help="comma-separated k values (default: from beta grid)")
    add_seed_option(parser)
    parser.add_argument(
        "--output", type=Path, help="CSV of (k, errors); stdout when omitted, with no run manifest"
    )


def run_cv(args: argparse.Namespace) -> CommandResult:
    train = _read_labeled(args.train, args.header)
    config = ClassifierConfig(method=ClassifierKind(args.method), depth=depth_spec_from(args))
    result = loocv_errors(train, config, args.grid, RngSeed(args.seed).child("loocv"))
    rows = [{"k": k, "errors": e} for k, e in zip(result.grid, result.errors)]
    outputs = _emit(rows, args.output)
    print(f"best k = {result.best_k}")
    return CommandResult(inputs=[args.train], outputs=outputs, seed=args.seed)


# real data


def _dataset_choice(value: str) -> List[DatasetName]:
    if value == "all":
        return list(DatasetName)
    return [DatasetName(value)]


def configure_fetch_data(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--dataset",
        choices=[name.value for name in DatasetName] + ["all"],
        default="all",
    )
    parser.add_argument("--data-dir", type=Path, default=Path(settings.DATA_DIR), help="default: $DATA_DIR")
    parser.add_argument("--offline", action="store_true", help="never download; use files already in the data dir")
    parser.add_argument("--force", action="store_true", help="download again even when the files exist")


def _canonical_csvs(name: DatasetName, data_dir: Path) -> List[Path]:
    """Validated dataset rewritten as x1..xd,label CSVs"""
    paths = dataset_paths(name, data_dir)
    if name == DatasetName.RIPLEY:
        train, test = load_ripley(*paths)
        splits = {"train": train, "test": test}
    else:
        splits = {"all": load_transfusion(paths[0])}
    written = []
    for split, sample in splits.items():
        target = data_dir / f"{name.value}-{split}.csv"
        write_rows_csv(_point_rows(sample.points, sample.labels), target)
        written.append(target)
    return written


def run_fetch_data(args: argparse.Namespace) -> CommandResult:
    result = CommandResult()
    for name in _dataset_choice(args.dataset):
        digests = fetch_dataset(name, args.data_dir, offline=args.offline, force=args.force)
        for filename, digest in digests.items():
            print(f"{filename}  sha256 {digest}")
        result.inputs.extend(dataset_paths(name, args.data_dir))
        result.outputs.extend(_canonical_csvs(name, args.data_dir))
    return result


def configure_realdata(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", choices=[name.value for name in DatasetName], required=True)
    parser.add_argument("--data-dir", type=Path, default=Path(settings.DATA_DIR), help="default: $DATA_DIR")
    parser.add_argument("--partitions", type=int, default=100, help="transfusion train/test partitions")
    parser.add_argument(
        "--classifiers",
        type=parse_names,
        help="comma-separated subset of " + ", ".join(c.display_name() for c in real_data_roster()),
    )
    parser.add_argument("--workers", type=int, default=settings.BENCHMARK_WORKERS)
    add_seed_option(parser)
    parser.add_argument("--output", type=Path, required=True, help="long-format CSV of test errors")
    parser.add_argument("--summary", type=Path, help="JSON summary (default: output path with a .summary.json suffix)")


def _real_roster(names: Optional[List[str]]) -> tuple[ClassifierConfig, ...]:
    roster = real_data_roster()
    if not names:
        return roster
    known = {c.display_name(): c for c in roster}
    unknown = [name for name in names if name not in known]
    if unknown:
        raise ValidationError(f"unknown classifiers {unknown}; choose from {list(known)}")
    return tuple(known[name] for name in names)


def run_realdata(args: argparse.Namespace) -> CommandResult:
    name = DatasetName(args.dataset)
    roster = _real_roster(args.classifiers)
    paths = dataset_paths(name, args.data_dir)
    if name == DatasetName.RIPLEY:
        train, test = load_ripley(*paths)
        report = run_fixed_split(train, test, args.seed, roster, name=name.value)
    else:
        sample = load_transfusion(paths[0])
        report = run_partition_benchmark(
            sample, TRANSFUSION_TRAIN_SIZES, args.partitions, args.seed, roster, args.workers, name=name.value
        )
    outputs = _report_outputs(report, args.output, args.summary)
    return CommandResult(inputs=list(paths), outputs=outputs, seed=args.seed)


# serve


def configure_serve(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)


def run_serve(args: argparse.Namespace) -> CommandResult:
    uvicorn.run("app.main:app", host=args.host, port=args.port, log_config=None)
    return CommandResult()


COMMANDS = {
    "depth": ("depth of query points w.r.t. a sample", configure_depth, run_depth),
    "neighbors": ("depth-based neighborhood of a query point", configure_neighbors, run_neighbors),
    "classify": ("fit a classifier and label test points", configure_classify, run_classify),
    "estimate": ("nearest-neighbor regression or density estimates", configure_estimate, run_estimate),
    "simulate": ("draw a labeled sample from a simulation setup", configure_simulate, run_simulate),
    "bayes-risk": ("Monte Carlo Bayes risk of a simulation setup", configure_bayes_risk, run_bayes_risk),
    "benchmark": ("Monte Carlo classifier comparison on a setup", configure_benchmark, run_benchmark_command),
    "cv": ("leave-one-out errors over a k grid", configure_cv, run_cv),
    "fetch-data": ("download and validate the real datasets", configure_fetch_data, run_fetch_data),
    "realdata": ("classifier comparison on a real dataset", configure_realdata, run_realdata),
    "serve": ("run the HTTP API", configure_serve, run_serve),
}
