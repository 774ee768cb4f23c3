"""Binary stream-file format.

Header (20 bytes, little-endian):
    magic "NENT" | version u8 | word width u8 | reserved u16 |
    stream count u32 | samples per stream u64
Payload: m streams, contiguous, little-endian two's-complement w-bit signed.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import FormatError

MAGIC = b"NENT"
VERSION = 1
_HEADER = struct.Struct("<4sBBHIQ")
_DTYPES = {16: "<i2", 32: "<i4", 64: "<i8"}


def write_stream_file(path, data: np.ndarray, w: int) -> None:
    """Write an m x n int array as a stream file with w-bit words."""
    if w not in _DTYPES:
        raise FormatError(f"unsupported word width {w} (use 16, 32 or 64)")
    data = np.asarray(data)
    if data.ndim != 2:
        raise FormatError("stream data must be 2-D (m x n)")
    m, n = data.shape
    lo, hi = -(1 << (w - 1)), (1 << (w - 1)) - 1
    if data.min() < lo or data.max() > hi:
        raise FormatError(f"data does not fit in {w}-bit words")
    payload = np.ascontiguousarray(data, dtype=_DTYPES[w]).tobytes()
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MAGIC, VERSION, w, 0, m, n))
        f.write(payload)


def read_stream_file(path) -> tuple[np.ndarray, int]:
    """Read a stream file; returns (m x n int64 array, word width)."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    magic, version, w, _, m, n = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    if w not in _DTYPES:
        raise FormatError(f"{path}: unsupported word width {w}")
    if m < 1 or n < 1:
        raise FormatError(f"{path}: empty stream geometry m={m}, n={n}")
    expected = _HEADER.size + m * n * (w // 8)
    if len(raw) != expected:
        raise FormatError(f"{path}: payload length {len(raw) - _HEADER.size} != {m * n * (w // 8)}")
    data = np.frombuffer(raw, dtype=_DTYPES[w], offset=_HEADER.size)
    return data.astype(np.int64).reshape(m, n), w
