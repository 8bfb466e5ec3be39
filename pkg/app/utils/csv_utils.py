"""
CSV utility functions for point input and long-format result output
"""
import csv
import io
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from app.core.exceptions import ValidationError
from app.core.logging_config import get_logger

logger = get_logger("app.utils.csv")

PathLike = Union[str, Path]


def _looks_like_header(line: str) -> bool:
    for field in line.split(","):
        try:
            float(field)
        except ValueError:
            return True
    return False


def read_points_csv(
    path: PathLike, header: Optional[bool] = None, labeled: bool = True
) -> Tuple[NDArray[np.float64], Optional[NDArray[np.int64]]]:
    """
    Read one observation per row: d feature columns, then an integer label
    column when `labeled`. Without an explicit `header` flag a first row that
    does not parse as numbers is taken as the header.

    Returns:
        tuple: (points, labels or None)

    Raises:
        ValidationError: If the file is missing, empty or not numeric
    """
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"CSV file not found: {path}")
    if header is None:
        first = path.read_text(encoding="utf-8").splitlines()[:1]
        header = bool(first) and _looks_like_header(first[0])
    try:
        frame = pd.read_csv(path, header=0 if header else None)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ValidationError(f"could not parse {path}: {e}") from e
    if frame.empty:
        raise ValidationError(f"{path}: no observations")
    values = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValidationError(f"{path}: non-numeric or missing values")
    if not labeled:
        return values, None
    if values.shape[1] < 2:
        raise ValidationError(f"{path}: need at least one feature column and a label column")
    labels = values[:, -1]
    if not np.all(np.isin(labels, (0, 1))):
        raise ValidationError(f"{path}: labels must be 0 or 1")
    return values[:, :-1], labels.astype(np.int64)


def format_rows_csv(rows: Sequence[Dict[str, Any]]) -> str:
    """Dictionaries as CSV text, columns in first-seen key order"""
    if not rows:
        raise ValidationError("Data list cannot be empty")
    fieldnames: List[str] = []
    for row in rows:
        for key in row:
            if key not in fieldnames:
                fieldnames.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key, "")) for key in fieldnames})
    return buffer.getvalue()


def write_rows_csv(rows: Sequence[Dict[str, Any]], path: PathLike) -> str:
    """
    Write dictionaries as CSV

    Returns:
        str: Absolute path to the created CSV file
    """
    text = format_rows_csv(rows)
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", newline="", encoding="utf-8") as csvfile:
        csvfile.write(text)
    logger.info(f"Wrote {len(rows)} rows to {file_path}")
    return str(file_path.absolute())


def _cell(value: Any) -> Any:
    """repr-exact floats so reruns compare byte for byte"""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return int(value)
    if value is None:
        return ""
    return value
