from dataclasses import dataclass

import numpy as np

from ..helper._helper import getLogger
from ..helper.exceptions import DimensionMismatchError, SingularMatrixError
from ._kernels import band_lu_inplace, band_lu_solve_inplace, padded_copy
from .banded_matrix import BandedMatrix

logger = getLogger(__name__)

# Pivots not above this fraction of the largest diagonal entry are treated as singular
SINGULARITY_TOLERANCE = 1e-14


@dataclass
class BandedLU:
    """
    No-pivot LU factors of a banded matrix, kept in the band storage of the input.

    Attributes
    ----------
    n : int
        Order of the factored matrix.
    kl : int
        Lower semi-bandwidth (bandwidth of the unit-lower factor L).
    ku : int
        Upper semi-bandwidth (bandwidth of U).
    factors : np.ndarray
        Row-wise band storage of shape ``(n + kl, kl + ku + 1)``; the strictly
        lower part holds L, the rest holds U. The last ``kl`` rows are padding.
    flop_count : int
        Work charged by the factorisation, ``kl * (ku + 2)`` per pivot step.
    """
    n: int
    kl: int
    ku: int
    factors: np.ndarray
    flop_count: int

    def lower(self) -> np.ndarray:
        """Dense unit-lower factor L, for checks on small instances."""
        lower = np.eye(self.n)
        for r in range(1, self.kl + 1):
            rows = np.arange(r, self.n)
            lower[rows, rows - r] = self.factors[rows, self.kl - r]
        return lower

    def upper(self) -> np.ndarray:
        """Dense upper factor U, for checks on small instances."""
        upper = np.zeros((self.n, self.n))
        for c in range(self.ku + 1):
            rows = np.arange(self.n - c)
            upper[rows, rows + c] = self.factors[rows, self.kl + c]
        return upper

    def pivots(self) -> np.ndarray:
        return self.factors[:self.n, self.kl].copy()

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return solve(self, rhs)


def flop_model(n: int, b: int) -> int:
    """
    Multiply-add count of a no-pivot band LU factorisation with ``kl = ku = b``.

    Each of the ``n`` pivot steps updates a ``b x b`` trailing block and forms
    ``b`` multipliers (a division and a store each), giving ``n * b * (b + 2)``.
    For a 2D grid in row-major order ``b ~ sqrt(n)``, so the cost grows as ``n**2``.

    Parameters
    ----------
    n : int
        Order of the matrix.
    b : int
        Semi-bandwidth, ``0 <= b < n``.

    Returns
    -------
    int
        The modelled flop count.
    """
    if n < 1:
        raise ValueError("`n` should be a positive integer.")
    if not 0 <= b < n:
        raise ValueError(f"Semi-bandwidth should satisfy 0 <= b < n, got b={b}, n={n}.")

    return n * b * (b + 2)


def factor(m: BandedMatrix) -> BandedLU:
    """
    Factor a banded matrix as ``L U`` without pivoting, keeping the band.

    Parameters
    ----------
    m : BandedMatrix
        Matrix to factor; symmetric positive definite inputs always succeed.

    Returns
    -------
    BandedLU
        The factors and the flop count charged by the factorisation.

    Raises
    ------
    SingularMatrixError
        If a pivot is not above ``1e-14`` times the largest diagonal entry.
    """
    if not isinstance(m, BandedMatrix):
        raise TypeError("`m` should be a BandedMatrix.")

    ab = padded_copy(m.data, m.kl)
    tiny = SINGULARITY_TOLERANCE * np.abs(m.data[:, m.kl]).max()
    failed = band_lu_inplace(ab, m.n, m.kl, m.ku, tiny)
    if failed >= 0:
        raise SingularMatrixError(int(failed), float(ab[failed, m.kl]))

    logger.debug(f"Factored band matrix n={m.n}, kl={m.kl}, ku={m.ku}")

    return BandedLU(m.n, m.kl, m.ku, ab, m.n * m.kl * (m.ku + 2))


def solve(lu: BandedLU, rhs: np.ndarray) -> np.ndarray:
    """
    Solve ``A x = rhs`` with the factors of ``A``.

    Parameters
    ----------
    lu : BandedLU
        Factors returned by :func:`factor`.
    rhs : np.ndarray
        Right-hand side of length ``n``.

    Returns
    -------
    np.ndarray
        The solution; ``rhs`` is left untouched.
    """
    x = np.array(rhs, dtype=np.float64)
    if x.shape != (lu.n,):
        raise DimensionMismatchError(f"Right-hand side of shape {x.shape} does not match order {lu.n}.")
    band_lu_solve_inplace(lu.factors, lu.n, lu.kl, lu.ku, x)

    return x
