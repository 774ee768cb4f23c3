"""Closed-form operation counts for the protected and unprotected schemes.

All counts are additions/multiplications; arithmetic shifts are free.  n is
the per-stream sample count (or the square-block edge for GEMM), m the number
of streams.
"""

from __future__ import annotations

import math


def c_gemm(m: int, n: int) -> float:
    return m * n**3


def c_conv_time(m: int, n: int) -> float:
    return 4 * m * n**2


def c_conv_freq(m: int, n: int) -> float:
    return m * ((45 * n + 15) * math.log2(3 * n + 1) + 3 * n + 1)


def c_ne_conv(m: int, n: int) -> float:
    """Entangle + extract + recover bound for stream ops."""
    return 2 * m * n


def c_ne_gemm(m: int, n: int) -> float:
    return 2 * m * n**2


def c_cs_gemm(m: int, n: int) -> float:
    """Checksum overhead cost: encode/recover plus the redundant worker's share."""
    return 2 * m * n**2 + c_gemm(m, n) / m


def c_cs_conv_time(m: int, n: int) -> float:
    return 2 * m * n + c_conv_time(m, n) / m


def c_cs_conv_freq(m: int, n: int) -> float:
    return 2 * m * n + c_conv_freq(m, n) / m


def ne_overhead_conv(m: int, n: int) -> float:
    """Relative entanglement overhead for time-domain convolution: 1/(2n)."""
    return c_ne_conv(m, n) / c_conv_time(m, n)


def ne_overhead_gemm(m: int, n: int) -> float:
    return c_ne_gemm(m, n) / c_gemm(m, n)


def cs_overhead_conv(m: int, n: int) -> float:
    """Relative checksum overhead for time-domain convolution; -> 1/m."""
    return c_cs_conv_time(m, n) / c_conv_time(m, n)


def cs_overhead_gemm(m: int, n: int) -> float:
    return c_cs_gemm(m, n) / c_gemm(m, n)
