"""Entangle / disentangle codec.

Entanglement superimposes stream pairs in place of the originals:

    out[i] = (in[(i-1) mod m] << l) + in[i]

Disentanglement recovers all m true results from any m-1 entangled streams.
The recovery pivot is the 2w-bit accumulator

    d_temp = sum_{t=0}^{m-2} (-1)^t * (delta[(r+1+t) mod m] << (m-2-t)*l)
           = (d_r << (m-1)*l) + (-1)^m * d_{(r+m-1) mod m}

whose low (m-1)*l bits sign-extend to the last output, after which the rest
follow by a forward shift-subtract chain.

Two implementations exist: a pure numpy reference (also the only path for
w = 64, where the accumulator needs Python integers) and a numba fast path
for w <= 32.  They are bit-identical; the tests cross-check them.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .blocks import EntangledBlock, StreamBlock
from .errors import ParameterError, RangeError
from .counters import OpCounters
from .params import CodecParams, input_range

_WIDE_DTYPE_MAX_W = 32  # above this, 2w-bit accumulators need Python ints


def _check_input_range(block: StreamBlock) -> None:
    bound = input_range(block.params)
    bad = np.abs(block.data) > bound.hi
    if bad.any():
        s, pos = np.argwhere(bad)[0]
        raise RangeError(
            f"stream {s} position {pos}: value {block.data[s, pos]} "
            f"outside +/-{bound.hi}",
            stream=int(s),
            position=int(pos),
            value=int(block.data[s, pos]),
            bound=bound.hi,
        )


def _check_failed(failed, m: int) -> int:
    if failed is None:
        return 0
    if not 0 <= failed < m:
        raise ParameterError(f"failed index {failed} out of range for m={m}")
    return int(failed)


def entangle(block: StreamBlock, counters: OpCounters | None = None) -> EntangledBlock:
    """Return the entangled superposition of ``block`` (copying variant)."""
    _check_input_range(block)
    src = block.data
    m, n = src.shape
    l = block.params.l
    out = np.empty_like(src)
    if _kernels.HAVE_NUMBA and block.params.w <= _WIDE_DTYPE_MAX_W:
        _kernels.entangle_kernel(src, out, l, m, n)
    else:
        np.left_shift(np.roll(src, 1, axis=0), l, out=out)
        np.add(out, src, out=out)
    if counters is not None:
        counters.encode_ops += m * n
        counters.shift_ops += m * n
    return EntangledBlock(block.params, out)


def entangle_inplace(block: StreamBlock, counters: OpCounters | None = None) -> EntangledBlock:
    """Entangle overwriting ``block``'s buffer; returns a view-sharing block."""
    ent = entangle(block, counters)
    block.data[...] = ent.data
    return EntangledBlock(block.params, block.data)


def _sign_extend(x, bits: int):
    """Interpret the low ``bits`` bits of x as a signed value (elementwise)."""
    mask = (1 << bits) - 1
    sbit = 1 << (bits - 1)
    return ((x & mask) ^ sbit) - sbit


def _disentangle_reference(delta: np.ndarray, p: CodecParams, r: int) -> np.ndarray:
    """Numpy reference recovery; object dtype when 2w exceeds 64 bits."""
    m, l = p.m, p.l
    wide = delta if p.w <= _WIDE_DTYPE_MAX_W else delta.astype(object)
    acc = wide[(r + 1) % m] << ((m - 2) * l)
    for t in range(1, m - 1):
        term = wide[(r + 1 + t) % m] << ((m - 2 - t) * l)
        acc = acc - term if t % 2 else acc + term
    low = (m - 1) * l
    v = _sign_extend(acc, low)
    out = np.empty_like(delta)
    out[(r + m - 1) % m] = -v if m % 2 else v
    out[r] = (acc - v) >> low
    prev = out[r]
    for t in range(1, m - 1):
        idx = (r + t) % m
        prev = delta[idx] - (prev.astype(np.int64) << l)
        out[idx] = prev
    return out


def disentangle(
    block: EntangledBlock,
    failed: int | None = None,
    counters: OpCounters | None = None,
) -> StreamBlock:
    """Recover all m result streams, never reading stream ``failed``.

    With ``failed=None`` the recovery pivots on r=0 by convention; the result
    is identical for every choice of pivot.
    """
    p = block.params
    r = _check_failed(failed, p.m)
    m, n = block.data.shape
    if _kernels.HAVE_NUMBA and p.w <= _WIDE_DTYPE_MAX_W:
        out = np.empty_like(block.data)
        _kernels.disentangle_kernel(block.data, out, p.l, m, n, r)
    else:
        out = _disentangle_reference(block.data, p, r)
    if counters is not None:
        counters.decode_ops += (2 * m - 3) * n
        counters.shift_ops += (2 * m - 2) * n
    return StreamBlock(p, out)


def disentangle_inplace(
    block: EntangledBlock,
    failed: int | None = None,
    counters: OpCounters | None = None,
) -> StreamBlock:
    """Disentangle overwriting ``block``'s buffer."""
    rec = disentangle(block, failed, counters)
    block.data[...] = rec.data
    return StreamBlock(block.params, block.data)


def _double_shift_extract_64(d_temp: np.ndarray, up: int) -> np.ndarray:
    """(x << up) >> up in a wrapping 64-bit word, arithmetic on the way down."""
    t = (d_temp.astype(np.uint64) << np.uint64(up)).astype(np.int64)
    return t >> up


def disentangle_m3(
    block: EntangledBlock,
    failed: int | None = None,
    counters: OpCounters | None = None,
) -> StreamBlock:
    """Independent m=3 recovery path, used as a cross-check oracle.

    Implements the specialized triplet recipe with its own sign convention
    (d_temp = delta[r+2] - (delta[r+1] << l)) and the double-shift extraction
    in a wrapping 2w-bit word, rather than the generalized alternating sum.
    """
    p = block.params
    if p.m != 3:
        raise ParameterError(f"m=3 oracle called with m={p.m}")
    r = _check_failed(failed, 3)
    l, w = p.l, p.w
    delta = block.data if p.w <= _WIDE_DTYPE_MAX_W else block.data.astype(object)
    d_temp = delta[(r + 2) % 3] - (delta[(r + 1) % 3] << l)
    if p.w == 32:
        d2 = _double_shift_extract_64(d_temp, 2 * (w - l))
    else:
        # the double shift in a 2w-bit word keeps exactly the low 2l bits
        d2 = _sign_extend(d_temp, 2 * l)
    d0 = (-(d_temp - d2)) >> (2 * l)
    d1 = block.data[(r + 1) % 3] - (np.asarray(d0, dtype=np.int64) << l)
    out = np.empty_like(block.data)
    out[(r + 2) % 3] = d2
    out[r] = d0
    out[(r + 1) % 3] = d1
    if counters is not None:
        counters.decode_ops += 3 * block.n
        counters.shift_ops += 4 * block.n
    return StreamBlock(p, out)
