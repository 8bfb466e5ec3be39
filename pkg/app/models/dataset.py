from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict


class DatasetName(str, Enum):
    RIPLEY = "ripley-synth"
    TRANSFUSION = "transfusion"


class DatasetFile(BaseModel):
    """One downloadable file of a dataset"""

    model_config = ConfigDict(frozen=True)

    filename: str
    source_url: str
    sha256: Optional[str] = None  # pinned digest, when configured
    rows: int  # expected observation count


class DatasetDescriptor(BaseModel):
    """Where a benchmark dataset comes from and what its columns mean"""

    model_config = ConfigDict(frozen=True)

    name: DatasetName
    files: Tuple[DatasetFile, ...]
    feature_columns: Tuple[str, ...]
    label_column: str
    dropped_columns: Tuple[str, ...] = ()
    class_counts: Optional[Dict[int, int]] = None  # expected positives/negatives over all rows
