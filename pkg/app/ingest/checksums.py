"""
SHA-256 digests of dataset files.

A digest is pinned through settings or recorded in DATA_DIR/checksums.json
when `fetch-data` downloads the file. A file with neither is never parsed.
"""
import hashlib
import json
from pathlib import Path
from typing import Dict, Optional, Union

from app.core.exceptions import ChecksumMismatchError, UnknownChecksumError
from app.core.logging_config import get_logger

logger = get_logger("app.ingest.checksums")

CHECKSUMS_FILE = "checksums.json"


def sha256_file(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def recorded_digests(data_dir: Union[str, Path]) -> Dict[str, str]:
    path = Path(data_dir) / CHECKSUMS_FILE
    if not path.exists():
        return {}
    with open(path) as handle:
        return json.load(handle)


def record_digest(data_dir: Union[str, Path], filename: str, digest: str) -> None:
    digests = recorded_digests(data_dir)
    digests[filename] = digest
    path = Path(data_dir) / CHECKSUMS_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(digests, handle, indent=2, sort_keys=True)


def expected_digest(path: Path, pinned: Optional[str]) -> Optional[str]:
    """Pinned digest if configured, else the one recorded next to the file"""
    if pinned:
        return pinned.lower()
    return recorded_digests(path.parent).get(path.name)


def verify_file(path: Union[str, Path], pinned: Optional[str] = None) -> str:
    """
    Digest of `path`, checked against the pinned or recorded one.

    Raises:
        UnknownChecksumError: If no digest is known for the file
        ChecksumMismatchError: If the file differs from its digest
    """
    path = Path(path)
    expected = expected_digest(path, pinned)
    if expected is None:
        raise UnknownChecksumError(str(path))
    actual = sha256_file(path)
    if actual != expected:
        raise ChecksumMismatchError(str(path), expected, actual)
    logger.debug(f"Verified sha256 of {path}")
    return actual
