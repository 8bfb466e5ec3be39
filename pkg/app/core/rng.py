"""
Counter-based random streams.

Every random draw in the library comes from a Philox generator keyed by a
(seed, stream-id) pair, so a replication or query can be re-run alone and in
any order and still see the same numbers.
"""
import hashlib
from dataclasses import dataclass
from typing import Union

import numpy as np

from app.core.exceptions import ValidationError

_U64 = (1 << 64) - 1

StreamPart = Union[int, str]


def _derive_stream(stream_id: int, parts: tuple) -> int:
    key = "|".join([str(stream_id), *(str(p) for p in parts)])
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class RngSeed:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _U64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream_id <= _U64:
            raise ValidationError(f"stream id must be a 64-bit unsigned integer, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """Fresh generator; equal (seed, stream_id) always replays the same draws"""
        return np.random.Generator(np.random.Philox(key=self.seed | (self.stream_id << 64)))

    def child(self, *parts: StreamPart) -> "RngSeed":
        """Independent stream named by `parts` (e.g. ``("replication", 3)``)"""
        return RngSeed(self.seed, _derive_stream(self.stream_id, parts))


def as_seed(value: Union["RngSeed", int, None], default: int = 0) -> RngSeed:
    if isinstance(value, RngSeed):
        return value
    return RngSeed(default if value is None else int(value))
