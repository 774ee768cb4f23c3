"""Optional numba-compiled hot loops for the w <= 32 int64 fast path.

Falls back to pure numpy in codec.py when numba is unavailable.  Results are
bit-identical to the reference implementation (cross-checked in the tests).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(f):
            return f

        return deco if not (args and callable(args[0])) else args[0]


@njit(cache=True)
def entangle_kernel(src, out, l, m, n):  # pragma: no cover - compiled
    for i in range(m):
        p = (i - 1) % m
        for j in range(n):
            out[i, j] = (src[p, j] << l) + src[i, j]


@njit(cache=True)
def disentangle_kernel(delta, out, l, m, n, r):  # pragma: no cover - compiled
    low = (m - 1) * l
    mask = (1 << low) - 1
    sbit = 1 << (low - 1)
    negate = m % 2 == 1
    last = (r + m - 1) % m
    block = 2048
    acc = np.empty(block, np.int64)  # L1-resident accumulator tile
    for j0 in range(0, n, block):
        j1 = min(j0 + block, n)
        nb = j1 - j0
        row0 = (r + 1) % m
        sh0 = (m - 2) * l
        for j in range(nb):
            acc[j] = delta[row0, j0 + j] << sh0
        for t in range(1, m - 1):
            row = (r + 1 + t) % m
            sh = (m - 2 - t) * l
            if t % 2 == 1:
                for j in range(nb):
                    acc[j] -= delta[row, j0 + j] << sh
            else:
                for j in range(nb):
                    acc[j] += delta[row, j0 + j] << sh
        for j in range(nb):
            a = acc[j]
            v = ((a & mask) ^ sbit) - sbit
            out[last, j0 + j] = -v if negate else v
            out[r, j0 + j] = (a - v) >> low
        for t in range(1, m - 1):
            idx = (r + t) % m
            prev = (r + t - 1) % m
            for j in range(j0, j1):
                out[idx, j] = delta[idx, j] - (out[prev, j] << l)
