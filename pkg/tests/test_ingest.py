import json

import httpx
import numpy as np
import pytest

from app.core.exceptions import (
    ChecksumMismatchError,
    DatasetValidationError,
    UnknownChecksumError,
    ValidationError,
)
from app.ingest.checksums import CHECKSUMS_FILE, record_digest, sha256_file, verify_file
from app.ingest.datasets import TRANSFUSION_TRAIN_SIZES, TRANSFUSION_URL
from app.ingest.fetch import dataset_paths, fetch_dataset
from app.ingest.loaders import load_ripley, load_transfusion
from app.ingest.partition import partition
from app.models.dataset import DatasetName
from tests.conftest import two_gaussians

TRANSFUSION_HEADER = (
    "Recency (months),Frequency (times),Monetary (c.c. blood),Time (months),"
    '"whether he/she donated blood in March 2007"'
)


def ripley_text(rows: int, positives: int, seed: int = 0) -> str:
    rng = np.random.default_rng(seed)
    lines = ["        xs            ys  yc"]
    for i in range(rows):
        x, y = rng.uniform(-1, 1, 2)
        lines.append(f"  {x: .8f}  {y: .8f}  {int(i < positives)}")
    return "\n".join(lines) + "\n"


def transfusion_text(rows: int = 748, positives: int = 178, ratio: float = 250.0, seed: int = 0) -> str:
    rng = np.random.default_rng(seed)
    lines = [TRANSFUSION_HEADER]
    for i in range(rows):
        frequency = int(rng.integers(1, 40))
        recency = int(rng.integers(0, 60))
        time = frequency + int(rng.integers(0, 60))
        monetary = ratio * frequency if i else ratio * frequency + 1
        lines.append(f"{recency},{frequency},{monetary:g},{time},{int(i < positives)}")
    return "\r\n".join(lines) + "\r\n"


def proportional_transfusion(**kwargs) -> str:
    text = transfusion_text(**kwargs)
    lines = text.split("\r\n")
    first = lines[1].split(",")
    first[2] = f"{250 * int(first[1])}"
    lines[1] = ",".join(first)
    return "\r\n".join(lines)


def trusted(path, text: str):
    """Write a dataset file and record its digest, as `fetch-data` would"""
    path.write_text(text)
    record_digest(path.parent, path.name, sha256_file(path))
    return path


@pytest.fixture
def ripley_files(tmp_path):
    train = tmp_path / "synth.tr"
    test = tmp_path / "synth.te"
    trusted(train, ripley_text(250, 125, seed=1))
    trusted(test, ripley_text(1000, 500, seed=2))
    return train, test


class TestLoaders:
    def test_ripley(self, ripley_files):
        train, test = load_ripley(*ripley_files)
        assert train.points.shape == (250, 2)
        assert test.points.shape == (1000, 2)
        assert train.class_counts() == (125, 125)

    def test_ripley_must_be_balanced(self, tmp_path, ripley_files):
        train = tmp_path / "skewed.tr"
        trusted(train, ripley_text(250, 100))
        with pytest.raises(DatasetValidationError):
            load_ripley(train, ripley_files[1])

    def test_ripley_row_count(self, tmp_path, ripley_files):
        short = tmp_path / "short.tr"
        trusted(short, ripley_text(248, 124))
        with pytest.raises(DatasetValidationError):
            load_ripley(short, ripley_files[1])

    def test_transfusion(self, tmp_path):
        path = tmp_path / "transfusion.data"
        sample = load_transfusion(trusted(path, proportional_transfusion()))
        assert sample.points.shape == (748, 3)
        assert sample.class_counts() == (570, 178)

    def test_transfusion_monetary_must_follow_frequency(self, tmp_path):
        path = tmp_path / "transfusion.data"
        trusted(path, transfusion_text())
        with pytest.raises(DatasetValidationError) as info:
            load_transfusion(path)
        assert "proportional" in str(info.value)

    def test_transfusion_class_counts(self, tmp_path):
        path = tmp_path / "transfusion.data"
        trusted(path, proportional_transfusion(positives=200))
        with pytest.raises(DatasetValidationError) as info:
            load_transfusion(path)
        assert "donors" in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetValidationError):
            load_transfusion(tmp_path / "nope.data")


class TestChecksums:
    def test_recorded_file_verifies(self, tmp_path):
        path = trusted(tmp_path / "a.txt", "hello\n")
        assert verify_file(path) == sha256_file(path)

    def test_unknown_digest_refuses(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_text("hello\n")
        with pytest.raises(UnknownChecksumError):
            verify_file(path)

    def test_loader_refuses_unknown_files(self, tmp_path):
        path = tmp_path / "transfusion.data"
        path.write_text(proportional_transfusion())
        with pytest.raises(UnknownChecksumError):
            load_transfusion(path)

    def test_loader_refuses_tampered_files(self, tmp_path):
        path = trusted(tmp_path / "transfusion.data", proportional_transfusion())
        path.write_bytes(path.read_bytes() + b"9,9,2250,20,0\r\n")
        with pytest.raises(ChecksumMismatchError):
            load_transfusion(path)

    def test_pinned_digest_must_match(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_text("hello\n")
        with pytest.raises(ChecksumMismatchError):
            verify_file(path, pinned="0" * 64)

    def test_recorded_digest_catches_edits(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_text("hello\n")
        record_digest(tmp_path, "a.txt", sha256_file(path))
        path.write_text("hello!\n")
        with pytest.raises(ChecksumMismatchError) as info:
            verify_file(path)
        assert isinstance(info.value, DatasetValidationError)

    def test_loader_verifies_before_parsing(self, tmp_path):
        path = tmp_path / "transfusion.data"
        path.write_text(proportional_transfusion())
        record_digest(tmp_path, path.name, "f" * 64)
        with pytest.raises(ChecksumMismatchError):
            load_transfusion(path)


class TestFetch:
    @staticmethod
    def _client(payload: bytes, status: int = 200) -> httpx.Client:
        def handler(request: httpx.Request) -> httpx.Response:
            assert str(request.url) == TRANSFUSION_URL
            return httpx.Response(status, content=payload)

        return httpx.Client(transport=httpx.MockTransport(handler))

    def test_download_records_a_digest(self, tmp_path):
        payload = proportional_transfusion().encode()
        digests = fetch_dataset(DatasetName.TRANSFUSION, tmp_path, client=self._client(payload))
        (path,) = dataset_paths(DatasetName.TRANSFUSION, tmp_path)
        assert path.read_bytes() == payload
        recorded = json.loads((tmp_path / CHECKSUMS_FILE).read_text())
        assert recorded == digests == {"transfusion.data": sha256_file(path)}

    def test_changed_upstream_file_is_rejected(self, tmp_path):
        fetch_dataset(DatasetName.TRANSFUSION, tmp_path, client=self._client(b"first\n"))
        with pytest.raises(ChecksumMismatchError):
            fetch_dataset(DatasetName.TRANSFUSION, tmp_path, force=True, client=self._client(b"second\n"))
        (path,) = dataset_paths(DatasetName.TRANSFUSION, tmp_path)
        assert path.read_bytes() == b"first\n"

    def test_present_file_is_not_downloaded(self, tmp_path):
        (path,) = dataset_paths(DatasetName.TRANSFUSION, tmp_path)
        trusted(path, "local\n")

        def refuse(request: httpx.Request) -> httpx.Response:
            raise AssertionError("no download expected")

        client = httpx.Client(transport=httpx.MockTransport(refuse))
        assert fetch_dataset(DatasetName.TRANSFUSION, tmp_path, client=client) == {"transfusion.data": sha256_file(path)}

    def test_present_file_without_a_digest_is_refused(self, tmp_path):
        (path,) = dataset_paths(DatasetName.TRANSFUSION, tmp_path)
        path.write_text("copied by hand\n")
        with pytest.raises(UnknownChecksumError):
            fetch_dataset(DatasetName.TRANSFUSION, tmp_path, offline=True)
        assert not (tmp_path / CHECKSUMS_FILE).exists()

    def test_offline_with_missing_file(self, tmp_path):
        with pytest.raises(DatasetValidationError):
            fetch_dataset(DatasetName.RIPLEY, tmp_path, offline=True)

    def test_http_error(self, tmp_path):
        with pytest.raises(DatasetValidationError):
            fetch_dataset(DatasetName.TRANSFUSION, tmp_path, client=self._client(b"", status=404))


class TestPartition:
    def test_stratified_sizes(self):
        sample = two_gaussians(100, seed=1)
        train, test = partition(sample, {0: 20, 1: 10}, seed=3)
        assert train.class_counts() == (20, 10)
        assert test.class_counts() == (30, 40)

    def test_disjoint_and_seeded(self):
        sample = two_gaussians(50, seed=1)
        first, rest = partition(sample, {0: 10, 1: 10}, seed=3)
        again, _ = partition(sample, {0: 10, 1: 10}, seed=3)
        np.testing.assert_array_equal(first.points, again.points)
        combined = np.vstack([first.points, rest.points])
        assert np.unique(combined, axis=0).shape[0] == 50

    def test_transfusion_split(self, tmp_path):
        path = tmp_path / "transfusion.data"
        trusted(path, proportional_transfusion())
        train, test = partition(load_transfusion(path), TRANSFUSION_TRAIN_SIZES, seed=1)
        assert (train.n, test.n) == (500, 248)
        assert test.class_counts() == (170, 78)

    def test_too_many_requested(self):
        with pytest.raises(ValidationError):
            partition(two_gaussians(10, seed=1), {0: 6, 1: 1})
