"""Checksum-stream baseline: m data streams plus one per-position sum stream.

The redundant stream is processed by the same operation as the data streams,
so any single missing output stream can be rebuilt by subtraction.  For
elementwise add/subtract the checksum stream must receive m*g instead of g,
otherwise the sum relation breaks (the kernel is added once per data stream
but only once to the checksum).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blocks import StreamBlock
from .counters import OpCounters
from .errors import ParameterError, RangeError
from .ops import Kernel, LsbOp, OpKind, _apply_raw
from .params import CodecParams, checksum_range


@dataclass
class ChecksumBlock:
    """m data streams plus the checksum stream as row m."""

    params: CodecParams
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64)
        if self.data.ndim != 2 or self.data.shape[0] != self.params.m + 1:
            raise ParameterError(
                f"expected {self.params.m + 1} rows, got shape {self.data.shape}"
            )

    @property
    def n(self) -> int:
        return self.data.shape[1]


def checksum_encode(block: StreamBlock, counters: OpCounters | None = None) -> ChecksumBlock:
    """Append the per-position sum stream."""
    p = block.params
    bound = checksum_range(p.m, p.w)
    bad = np.abs(block.data) > bound.hi
    if bad.any():
        s, pos = np.argwhere(bad)[0]
        raise RangeError(
            f"stream {s} position {pos}: value {block.data[s, pos]} exceeds the "
            f"checksum input bound +/-{bound.hi}",
            stream=int(s),
            position=int(pos),
            value=int(block.data[s, pos]),
            bound=bound.hi,
        )
    r = block.data.sum(axis=0)
    if counters is not None:
        counters.encode_ops += (p.m - 1) * block.n
    return ChecksumBlock(p, np.vstack([block.data, r]))


def checksum_apply(
    op: LsbOp, block: ChecksumBlock, counters: OpCounters | None = None
) -> ChecksumBlock:
    """Apply op to all m+1 streams (checksum kernel scaled by m if additive)."""
    op.validate(block.n)
    m = block.params.m
    out_data = _apply_raw(op.kind, op.kernel, block.data[:m], counters)
    if op.kind in (OpKind.ELEMENTWISE_ADD, OpKind.ELEMENTWISE_SUB):
        cs_kernel = Kernel(vector=op.kernel.vector * m)
        if counters is not None:
            counters.encode_ops += len(op.kernel.vector)
    else:
        cs_kernel = op.kernel
    out_cs = _apply_raw(op.kind, cs_kernel, block.data[m:], counters)
    return ChecksumBlock(block.params, np.vstack([out_data, out_cs]))


def checksum_recover(
    block: ChecksumBlock,
    failed: int | None = None,
    counters: OpCounters | None = None,
) -> StreamBlock:
    """Rebuild the m output streams with at most one of the m+1 rows missing."""
    m = block.params.m
    if failed is None or failed == m:
        # no failure, or the checksum stream itself failed: data rows are intact
        return StreamBlock(block.params, block.data[:m].copy())
    if not 0 <= failed < m:
        raise ParameterError(f"failed index {failed} out of range for m+1={m + 1} workers")
    out = block.data[:m].copy()
    surviving = [i for i in range(m) if i != failed]
    out[failed] = block.data[m] - block.data[surviving].sum(axis=0)
    if counters is not None:
        counters.decode_ops += (m - 1) * block.n
    return StreamBlock(block.params, out)
