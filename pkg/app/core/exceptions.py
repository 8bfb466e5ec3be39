"""
Exception hierarchy shared by every package.

Validation errors (bad input) subclass ValueError; computational errors
(singular scatter, degenerate scale or volume) subclass ArithmeticError.
"""
from typing import Optional


class DepthKnnError(Exception):
    """Base class for all library errors"""


class ValidationError(DepthKnnError, ValueError):
    """Malformed or inconsistent input"""


class UsageError(ValidationError):
    """Command-line arguments that do not parse"""


class DimensionMismatchError(ValidationError):
    """Points, queries or maps disagree on the dimension d"""

    def __init__(self, expected: int, actual: int, what: str = "point"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} has dimension {actual}, expected {expected}")


class InsufficientDataError(ValidationError):
    """Not enough observations for the requested statistic"""


class DatasetValidationError(ValidationError):
    """A benchmark dataset does not match its expected schema or size"""


class ChecksumMismatchError(DatasetValidationError):
    """A dataset file digest differs from the pinned one"""

    def __init__(self, path: str, expected: str, actual: str):
        self.path = path
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"checksum mismatch for {path}: expected sha256 {expected}, got {actual}. "
            "Re-download with `depthknn fetch-data`, or unset the pinned digest "
            "if the file was replaced on purpose."
        )


class UnknownChecksumError(DatasetValidationError):
    """A dataset file has neither a pinned nor a recorded digest"""

    def __init__(self, path: str):
        self.path = path
        super().__init__(
            f"no known sha256 for {path}. Download it with `depthknn fetch-data`, "
            "or pin its digest in the environment before loading it."
        )


class ComputationError(DepthKnnError, ArithmeticError):
    """A numerically degenerate configuration"""


class SingularityError(ComputationError):
    """A scatter matrix is (numerically) singular"""

    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        self.eigenvalue = eigenvalue
        if eigenvalue is not None:
            message = f"{message} (smallest eigenvalue {eigenvalue:.3e})"
        super().__init__(message)


class DegenerateScaleError(ComputationError):
    """Zero MAD along a scanned direction"""


class DegenerateVolumeError(ComputationError):
    """A neighborhood with zero Lebesgue measure"""
