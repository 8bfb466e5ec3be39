"""
Descriptors of the two real-data benchmarks
"""
from app.core.config import settings
from app.models.dataset import DatasetDescriptor, DatasetFile, DatasetName

RIPLEY_BASE_URL = "http://www.stats.ox.ac.uk/pub/PRNN"
TRANSFUSION_URL = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/blood-transfusion/transfusion.data"
)

RIPLEY_TRAIN_ROWS = 250
RIPLEY_TEST_ROWS = 1000
TRANSFUSION_ROWS = 748
TRANSFUSION_POSITIVES = 178

# Training class sizes of one transfusion partition: 100 donors who gave
# blood in March 2007, 400 who did not; the other 248 are the test sample.
TRANSFUSION_TRAIN_SIZES = {1: 100, 0: 400}


def ripley_descriptor() -> DatasetDescriptor:
    return DatasetDescriptor(
        name=DatasetName.RIPLEY,
        files=(
            DatasetFile(
                filename="synth.tr",
                source_url=f"{RIPLEY_BASE_URL}/synth.tr",
                sha256=settings.RIPLEY_TRAIN_SHA256,
                rows=RIPLEY_TRAIN_ROWS,
            ),
            DatasetFile(
                filename="synth.te",
                source_url=f"{RIPLEY_BASE_URL}/synth.te",
                sha256=settings.RIPLEY_TEST_SHA256,
                rows=RIPLEY_TEST_ROWS,
            ),
        ),
        feature_columns=("xs", "ys"),
        label_column="yc",
    )


def transfusion_descriptor() -> DatasetDescriptor:
    return DatasetDescriptor(
        name=DatasetName.TRANSFUSION,
        files=(
            DatasetFile(
                filename="transfusion.data",
                source_url=TRANSFUSION_URL,
                sha256=settings.TRANSFUSION_SHA256,
                rows=TRANSFUSION_ROWS,
            ),
        ),
        feature_columns=("recency", "frequency", "time"),
        label_column="donated",
        dropped_columns=("monetary",),
        class_counts={1: TRANSFUSION_POSITIVES, 0: TRANSFUSION_ROWS - TRANSFUSION_POSITIVES},
    )


def get_descriptor(name: DatasetName) -> DatasetDescriptor:
    return ripley_descriptor() if DatasetName(name) == DatasetName.RIPLEY else transfusion_descriptor()
