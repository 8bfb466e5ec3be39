"""
Acquisition and validation of the real-data benchmarks
"""
from .checksums import sha256_file, verify_file
from .datasets import TRANSFUSION_TRAIN_SIZES, get_descriptor
from .fetch import dataset_paths, fetch_dataset
from .loaders import load_ripley, load_transfusion
from .partition import partition

__all__ = [
    "TRANSFUSION_TRAIN_SIZES",
    "dataset_paths",
    "fetch_dataset",
    "get_descriptor",
    "load_ripley",
    "load_transfusion",
    "partition",
    "sha256_file",
    "verify_file",
]
