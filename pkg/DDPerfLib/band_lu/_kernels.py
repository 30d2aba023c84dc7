# Row-wise band storage: ab[i, d] holds A[i, i + d - kl].
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def band_lu_inplace(ab, n, kl, ku, tiny):
    """
    Overwrite ``ab`` (padded with ``kl`` zero rows) with its unit-lower L and U factors.

    Every pivot step runs over the full kl x ku band, the padding rows absorbing
    the steps that run past the last row. Returns the index of the first pivot
    not above ``tiny``, or -1 when the factorisation succeeds.
    """
    for k in range(n):
        pivot = ab[k, kl]
        if not pivot > tiny:
            return k
        for r in range(1, kl + 1):
            i = k + r
            multiplier = ab[i, kl - r] / pivot
            ab[i, kl - r] = multiplier
            for c in range(1, ku + 1):
                ab[i, kl + c - r] -= multiplier * ab[k, kl + c]
    return -1


@njit(cache=True, nogil=True)
def band_lu_solve_inplace(ab, n, kl, ku, x):
    """Forward substitution with the unit-lower factor then back substitution with U, in place on ``x``."""
    for k in range(n):
        xk = x[k]
        last = min(kl, n - 1 - k)
        for r in range(1, last + 1):
            x[k + r] -= ab[k + r, kl - r] * xk
    for k in range(n - 1, -1, -1):
        s = x[k]
        last = min(ku, n - 1 - k)
        for c in range(1, last + 1):
            s -= ab[k, kl + c] * x[k + c]
        x[k] = s / ab[k, kl]


@njit(cache=True, nogil=True)
def band_matvec(ab, n, kl, ku, x, out):
    for i in range(n):
        s = 0.0
        first = max(0, kl - i)
        last = min(kl + ku, n - 1 - i + kl)
        for d in range(first, last + 1):
            s += ab[i, d] * x[i + d - kl]
        out[i] = s
    return out


def padded_copy(data: np.ndarray, kl: int) -> np.ndarray:
    """Copy of the band storage with ``kl`` zero rows appended for the full-width pivot steps."""
    n, width = data.shape
    ab = np.zeros((n + kl, width), dtype=np.float64)
    ab[:n] = data

    return ab
