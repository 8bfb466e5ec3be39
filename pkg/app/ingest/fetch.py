"""
Download of the benchmark datasets into DATA_DIR
"""
import hashlib
from pathlib import Path
from typing import Dict, Optional, Union

import httpx

from app.core.config import settings
from app.core.exceptions import ChecksumMismatchError, DatasetValidationError
from app.core.logging_config import get_logger
from app.ingest.checksums import expected_digest, record_digest, verify_file
from app.ingest.datasets import get_descriptor
from app.models.dataset import DatasetName

logger = get_logger("app.ingest.fetch")

DOWNLOAD_TIMEOUT = 60.0


def dataset_paths(name: DatasetName, data_dir: Optional[Union[str, Path]] = None) -> list[Path]:
    root = Path(data_dir or settings.DATA_DIR)
    return [root / file.filename for file in get_descriptor(name).files]


def fetch_dataset(
    name: DatasetName,
    data_dir: Optional[Union[str, Path]] = None,
    offline: bool = False,
    force: bool = False,
    client: Optional[httpx.Client] = None,
) -> Dict[str, str]:
    """
    Make sure every file of `name` is present in `data_dir` and matches its
    expected digest. Missing files are downloaded unless `offline`; a download
    with no known digest gets its digest recorded in checksums.json. A file
    that was already present is only accepted against a known digest.

    Returns:
        dict: filename -> sha256 of each file
    """
    root = Path(data_dir or settings.DATA_DIR)
    root.mkdir(parents=True, exist_ok=True)
    digests: Dict[str, str] = {}
    owns_client = client is None
    client = client or httpx.Client(timeout=DOWNLOAD_TIMEOUT, follow_redirects=True)
    try:
        for file in get_descriptor(name).files:
            path = root / file.filename
            expected = expected_digest(path, file.sha256)
            if force or not path.exists():
                if offline:
                    raise DatasetValidationError(
                        f"{path} is missing and --offline forbids downloading it from {file.source_url}"
                    )
                downloaded = _download(client, file.source_url, path, expected)
                if expected is None:
                    record_digest(root, file.filename, downloaded)
                    logger.info(f"Recorded sha256 {downloaded} for {file.filename}")
            digests[file.filename] = verify_file(path, file.sha256)
    finally:
        if owns_client:
            client.close()
    return digests


def _download(client: httpx.Client, url: str, path: Path, expected: Optional[str]) -> str:
    logger.info(f"Downloading {url} -> {path}")
    try:
        response = client.get(url)
        response.raise_for_status()
    except httpx.HTTPError as e:
        raise DatasetValidationError(f"download of {url} failed: {e}") from e
    actual = hashlib.sha256(response.content).hexdigest()
    if expected is not None and actual != expected:
        raise ChecksumMismatchError(url, expected, actual)
    partial = path.with_suffix(path.suffix + ".part")
    partial.write_bytes(response.content)
    partial.replace(path)
    return actual
