"""Stream containers: plain and entangled m x n integer blocks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .params import CodecParams


def _as_block_array(data, m: int) -> np.ndarray:
    arr = np.asarray(data, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(len(arr), 1)
    if arr.ndim != 2:
        raise ParameterError(f"block data must be 2-D (m x n), got shape {arr.shape}")
    if arr.shape[0] != m:
        raise ParameterError(f"expected {m} streams, got {arr.shape[0]}")
    if arr.shape[1] < 1:
        raise ParameterError("streams must hold at least one sample")
    return arr


@dataclass
class StreamBlock:
    """m parallel integer streams of equal length n (codec inputs or results)."""

    params: CodecParams
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.data = _as_block_array(self.data, self.params.m)

    @property
    def n(self) -> int:
        return self.data.shape[1]

    def copy(self) -> "StreamBlock":
        return StreamBlock(self.params, self.data.copy())


@dataclass
class EntangledBlock:
    """m entangled streams; element i is shift(source[i-1 mod m]) + source[i]."""

    params: CodecParams
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.data = _as_block_array(self.data, self.params.m)

    @property
    def n(self) -> int:
        return self.data.shape[1]

    def copy(self) -> "EntangledBlock":
        return EntangledBlock(self.params, self.data.copy())
