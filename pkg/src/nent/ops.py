"""The LSB operation catalogue and its two execution paths.

Every operation here is linear (or bijective) in the stream argument, so the
same arithmetic applied to entangled streams commutes with recovery.  The one
wrinkle is elementwise add/subtract, whose kernel must first be entangled with
itself (g <- (g << l) + g) for the homomorphism to hold.

All arithmetic is integer-exact: int64 when a worst-case bound certifies no
intermediate can overflow, arbitrary-precision Python integers otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .blocks import EntangledBlock, StreamBlock
from .counters import OpCounters
from .errors import ParameterError
from .params import CodecParams, RangeBound, output_range

_INT64_SAFE = 1 << 62


class OpKind(enum.Enum):
    ELEMENTWISE_ADD = "add"
    ELEMENTWISE_SUB = "sub"
    ELEMENTWISE_MUL = "mul"
    SCALE = "scale"
    INNER_PRODUCT = "dot"
    CIRCULAR_CONVOLUTION = "conv"
    CROSS_CORRELATION = "xcorr"
    PERMUTATION = "perm"
    ROW_GEMM = "gemm"


@dataclass(frozen=True)
class Kernel:
    """One of: integer vector, scalar, permutation index map, or matrix."""

    vector: Optional[np.ndarray] = None
    scalar: Optional[int] = None
    perm: Optional[np.ndarray] = None
    matrix: Optional[np.ndarray] = None

    @classmethod
    def of_vector(cls, g) -> "Kernel":
        return cls(vector=np.asarray(g, dtype=np.int64))

    @classmethod
    def of_scalar(cls, s: int) -> "Kernel":
        return cls(scalar=int(s))

    @classmethod
    def of_permutation(cls, idx) -> "Kernel":
        idx = np.asarray(idx, dtype=np.int64)
        if sorted(idx.tolist()) != list(range(len(idx))):
            raise ParameterError("permutation kernel is not a bijection")
        return cls(perm=idx)

    @classmethod
    def of_matrix(cls, g) -> "Kernel":
        g = np.asarray(g, dtype=np.int64)
        if g.ndim != 2:
            raise ParameterError("matrix kernel must be 2-D")
        return cls(matrix=g)


@dataclass(frozen=True)
class LsbOp:
    kind: OpKind
    kernel: Kernel

    def out_len(self, n: int) -> int:
        if self.kind is OpKind.INNER_PRODUCT:
            return 1
        if self.kind is OpKind.ROW_GEMM:
            return self.kernel.matrix.shape[1]
        return n

    def validate(self, n: int) -> None:
        k = self.kind
        if k in (OpKind.ELEMENTWISE_ADD, OpKind.ELEMENTWISE_SUB, OpKind.ELEMENTWISE_MUL):
            g = self.kernel.vector
            if g is None:
                raise ParameterError(f"{k.value} needs a vector kernel")
            if g.shape not in ((n,), (1,)):
                raise ParameterError(f"kernel length {g.shape[0]} != stream length {n}")
        elif k is OpKind.SCALE:
            if self.kernel.scalar is None:
                raise ParameterError("scale needs a scalar kernel")
        elif k is OpKind.INNER_PRODUCT:
            g = self.kernel.vector
            if g is None or g.shape != (n,):
                raise ParameterError("inner product kernel must match stream length")
        elif k in (OpKind.CIRCULAR_CONVOLUTION, OpKind.CROSS_CORRELATION):
            g = self.kernel.vector
            if g is None:
                raise ParameterError(f"{k.value} needs a vector kernel")
            if len(g) < 1 or len(g) > n:
                raise ParameterError(f"kernel length {len(g)} not in 1..{n}")
        elif k is OpKind.PERMUTATION:
            idx = self.kernel.perm
            if idx is None or len(idx) != n:
                raise ParameterError("permutation must map the full stream index set")
        elif k is OpKind.ROW_GEMM:
            g = self.kernel.matrix
            if g is None or g.shape[0] != n:
                raise ParameterError("matrix kernel row count must match stream length")


@dataclass(frozen=True)
class OpBoundReport:
    worst_case_output: int
    admitted: bool
    limit: int


def _kernel_abs_sum(op: LsbOp) -> int:
    g = op.kernel.vector
    return int(np.abs(g.astype(object)).sum())


def admit(op: LsbOp, input_bound: int, p: CodecParams) -> OpBoundReport:
    """Conservative worst-case output magnitude versus the codec output range."""
    limit = output_range(p).hi
    return admit_against(op, input_bound, limit)


def admit_against(op: LsbOp, input_bound: int, limit: int) -> OpBoundReport:
    b = int(input_bound)
    k = op.kind
    if k in (OpKind.ELEMENTWISE_ADD, OpKind.ELEMENTWISE_SUB):
        worst = b + int(np.abs(op.kernel.vector.astype(object)).max())
    elif k is OpKind.ELEMENTWISE_MUL:
        worst = b * int(np.abs(op.kernel.vector.astype(object)).max())
    elif k is OpKind.SCALE:
        worst = b * abs(op.kernel.scalar)
    elif k in (OpKind.INNER_PRODUCT, OpKind.CIRCULAR_CONVOLUTION, OpKind.CROSS_CORRELATION):
        worst = b * _kernel_abs_sum(op)
    elif k is OpKind.PERMUTATION:
        worst = b
    elif k is OpKind.ROW_GEMM:
        col_sums = np.abs(op.kernel.matrix.astype(object)).sum(axis=0)
        worst = b * int(col_sums.max())
    else:  # pragma: no cover
        raise ParameterError(f"unknown op kind {k}")
    return OpBoundReport(worst_case_output=worst, admitted=worst <= limit, limit=limit)


def _max_abs(a: np.ndarray) -> int:
    return int(np.abs(a.astype(object)).max()) if a.size else 0


def _circ_conv_rows(data: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Circular convolution of each row with g, integer-exact."""
    n = data.shape[1]
    nk = len(g)
    # partial sums are bounded by max|row| * sum|g|
    if _max_abs(data) * max(_kernel_abs_sum_arr(g), 1) >= _INT64_SAFE:
        data = data.astype(object)
        g = g.astype(object)
    out = np.empty((data.shape[0], n), dtype=data.dtype)
    for i, row in enumerate(data):
        lin = np.convolve(row, g)
        out[i, :] = lin[:n]
        if nk > 1:
            out[i, : nk - 1] += lin[n:]
    return out


def _kernel_abs_sum_arr(g: np.ndarray) -> int:
    return int(np.abs(g.astype(object)).sum())


def _rev_circular(data: np.ndarray) -> np.ndarray:
    """Row-wise index reversal modulo n: out[:, j] = data[:, (-j) mod n]."""
    return np.concatenate([data[:, :1], data[:, 1:][:, ::-1]], axis=1)


def _apply_raw(
    kind: OpKind,
    kernel: Kernel,
    data: np.ndarray,
    counters: OpCounters | None = None,
) -> np.ndarray:
    """Apply one LSB operation row-by-row to a 2-D integer array."""
    m, n = data.shape
    nk_ops = 0
    if kind is OpKind.ELEMENTWISE_ADD:
        out = data + kernel.vector
        nk_ops = m * n
    elif kind is OpKind.ELEMENTWISE_SUB:
        out = data - kernel.vector
        nk_ops = m * n
    elif kind is OpKind.ELEMENTWISE_MUL:
        out = _mul_exact(data, kernel.vector)
        nk_ops = m * n
    elif kind is OpKind.SCALE:
        out = _mul_exact(data, np.asarray([kernel.scalar], dtype=np.int64))
        nk_ops = m * n
    elif kind is OpKind.INNER_PRODUCT:
        g = kernel.vector
        wide = _max_abs(data) * max(_kernel_abs_sum_arr(g), 1) >= _INT64_SAFE
        d = data.astype(object) if wide else data
        gg = g.astype(object) if wide else g
        out = (d * gg).sum(axis=1, keepdims=True)
        nk_ops = m * (2 * n - 1)
    elif kind is OpKind.CIRCULAR_CONVOLUTION:
        out = _circ_conv_rows(data, kernel.vector)
        nk_ops = m * n * (2 * len(kernel.vector) - 1)
    elif kind is OpKind.CROSS_CORRELATION:
        # xcorr(c, g)[j] = sum_i c[i] g[(i+j) mod n] = conv(c reversed mod n, g)[j]
        out = _circ_conv_rows(_rev_circular(data), kernel.vector)
        nk_ops = m * n * (2 * len(kernel.vector) - 1)
    elif kind is OpKind.PERMUTATION:
        out = data[:, kernel.perm]
    elif kind is OpKind.ROW_GEMM:
        g = kernel.matrix
        wide = _max_abs(data) * int(np.abs(g.astype(object)).sum(axis=0).max()) >= _INT64_SAFE
        d = data.astype(object) if wide else data
        gg = g.astype(object) if wide else g
        out = d @ gg
        nk_ops = m * g.shape[1] * (2 * n - 1)
    else:  # pragma: no cover
        raise ParameterError(f"unknown op kind {kind}")
    if counters is not None:
        counters.op_ops += nk_ops
    return np.asarray(out, dtype=np.int64).reshape(m, -1)


def _mul_exact(data: np.ndarray, g: np.ndarray) -> np.ndarray:
    if _max_abs(data) * max(_max_abs(g), 1) >= _INT64_SAFE:
        return data.astype(object) * g.astype(object)
    return data * g


def apply_conventional(
    op: LsbOp, block: StreamBlock, counters: OpCounters | None = None
) -> StreamBlock:
    """Stream-by-stream application on plain streams."""
    op.validate(block.n)
    out = _apply_raw(op.kind, op.kernel, block.data, counters)
    return StreamBlock(block.params, out)


def self_entangle_kernel(op: LsbOp, p: CodecParams, counters: OpCounters | None = None) -> LsbOp:
    """Transform additive kernels for the entangled path: g <- (g << l) + g.

    Required only for elementwise add/subtract; all other kinds act linearly
    on the stream argument and use their kernel unmodified.
    """
    if op.kind in (OpKind.ELEMENTWISE_ADD, OpKind.ELEMENTWISE_SUB):
        g = op.kernel.vector
        if counters is not None:
            counters.encode_ops += len(g)
            counters.shift_ops += len(g)
        return LsbOp(op.kind, Kernel(vector=(g << p.l) + g))
    return op


def apply_entangled(
    op: LsbOp, block: EntangledBlock, counters: OpCounters | None = None
) -> EntangledBlock:
    """Identical arithmetic on entangled streams (kernel self-entangled if additive)."""
    op.validate(block.n)
    ent_op = self_entangle_kernel(op, block.params, counters)
    out = _apply_raw(ent_op.kind, ent_op.kernel, block.data, counters)
    return EntangledBlock(block.params, out)
