"""Codec geometry: (m, w, l, k) parameter selection and dynamic-range bounds.

The codec superimposes stream pairs with an l-bit shift, keeping k headroom
bits, inside w-bit words shared by m >= 3 streams.  All range bounds below are
symmetric integer intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class CodecParams:
    """Entanglement geometry for m streams of w-bit words."""

    m: int
    w: int
    l: int
    k: int

    def __post_init__(self):
        if self.m < 3:
            raise ParameterError(f"need at least 3 streams, got m={self.m}")
        if not 1 <= self.k <= self.l:
            raise ParameterError(f"need 1 <= k <= l, got l={self.l}, k={self.k}")
        if (self.m - 1) * self.l + self.k > self.w:
            raise ParameterError(
                f"(m-1)*l + k = {(self.m - 1) * self.l + self.k} exceeds w={self.w}"
            )

    @property
    def output_bitwidth(self) -> int:
        """Bit budget available to each recovered output: (m-2)*l + k."""
        return (self.m - 2) * self.l + self.k


@dataclass(frozen=True)
class RangeBound:
    """Symmetric signed bound: admissible values are lo <= v <= hi, lo == -hi."""

    lo: int
    hi: int

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi


def derive_params(m: int, w: int) -> CodecParams:
    """Pick the (l, k) maximizing the output bitwidth (m-2)*l + k.

    Ties are broken toward the smallest l.  Raises ParameterError when no
    feasible (l, k) exists for the given m and w.
    """
    if m < 3:
        raise ParameterError(f"need at least 3 streams, got m={m}")
    best = None
    for l in range(1, w + 1):
        k_max = min(l, w - (m - 1) * l)
        if k_max < 1:
            break
        bits = (m - 2) * l + k_max
        if best is None or bits > best[0]:
            best = (bits, l, k_max)
    if best is None:
        raise ParameterError(f"no feasible (l, k) for m={m}, w={w}")
    _, l, k = best
    return CodecParams(m=m, w=w, l=l, k=k)


def output_range(p: CodecParams) -> RangeBound:
    """Admissible range for every per-stream result of an entangled run.

    hi = 2^((m-3)*l) * (2^(l+k-1) - 2^l).  This is the m=3 bound scaled up by
    one l-bit field per extra stream; it coincides with the looser
    2^((m-3)*l+k) * (2^(l-1) - 1) form whenever k == l and is strictly safer
    when k < l.  Degenerate geometries (l == 1) collapse to +/-0.
    """
    hi = (1 << ((p.m - 3) * p.l)) * ((1 << (p.l + p.k - 1)) - (1 << p.l))
    hi = max(hi, 0)
    return RangeBound(lo=-hi, hi=hi)


def input_range(p: CodecParams) -> RangeBound:
    """Admissible range for raw codec inputs.

    Equal to output_range so the identity operation is always admissible.
    """
    return output_range(p)


def checksum_bitwidth(m: int, w: int) -> int:
    """Input bitwidth supported by the checksum-stream baseline: w - ceil(log2 m)."""
    return w - math.ceil(math.log2(m))


def checksum_range(m: int, w: int) -> RangeBound:
    """Symmetric value bound for inputs to the checksum baseline."""
    hi = (1 << (checksum_bitwidth(m, w) - 1)) - 1
    return RangeBound(lo=-hi, hi=hi)


def word_range(w: int) -> RangeBound:
    """Symmetric bound of values representable in a signed w-bit word."""
    hi = (1 << (w - 1)) - 1
    return RangeBound(lo=-hi, hi=hi)
