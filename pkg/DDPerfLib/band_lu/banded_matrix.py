from typing import Dict, Optional, Union

import numpy as np
import scipy.sparse as sp

from ..helper.exceptions import DimensionMismatchError
from ._kernels import band_matvec


class BandedMatrix:
    """
    Square matrix with non-zeros confined to ``-kl <= j - i <= ku``.

    The band is kept row-wise and contiguous: ``data[i, d]`` is the entry
    ``A[i, i + d - kl]``, so ``data`` holds the ``kl + ku + 1`` diagonals of
    the matrix side by side, each of length ``n``. Entries that would fall
    outside the matrix are kept at zero.

    Attributes
    ----------
    n : int
        Order of the matrix.
    kl : int
        Lower semi-bandwidth.
    ku : int
        Upper semi-bandwidth.
    data : np.ndarray
        Band storage of shape ``(n, kl + ku + 1)``.
    """

    def __init__(self, data: np.ndarray, kl: int, ku: int):
        data = np.ascontiguousarray(data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError("`data` should be a two-dimensional band array.")
        n = data.shape[0]
        if n < 1:
            raise ValueError("A banded matrix should have at least one row.")
        if not 0 <= kl < n or not 0 <= ku < n:
            raise ValueError(f"Semi-bandwidths should satisfy 0 <= kl, ku < n, got kl={kl}, ku={ku}, n={n}.")
        if data.shape[1] != kl + ku + 1:
            raise ValueError(f"Band storage should have {kl + ku + 1} columns, got {data.shape[1]}.")

        self.n = n
        self.kl = kl
        self.ku = ku
        self.data = data
        # zero the corners of the storage that do not map to matrix entries
        rows = np.arange(n)[:, None]
        cols = rows + np.arange(kl + ku + 1)[None, :] - kl
        self.data[(cols < 0) | (cols >= n)] = 0.0

    @property
    def bands(self) -> np.ndarray:
        """Diagonal-major view: ``bands[d]`` is diagonal ``d - kl`` indexed by row."""
        return self.data.T

    @property
    def shape(self):
        return self.n, self.n

    @classmethod
    def zeros(cls, n: int, kl: int, ku: int) -> "BandedMatrix":
        return cls(np.zeros((n, kl + ku + 1)), kl, ku)

    @classmethod
    def from_diagonals(cls, n: int, diagonals: Dict[int, Union[float, np.ndarray]]) -> "BandedMatrix":
        """
        Build a banded matrix from a mapping of diagonal offset to values.

        Parameters
        ----------
        n : int
            Order of the matrix.
        diagonals : dict
            ``{offset: values}``, offset ``j - i``; values are a scalar or an
            array of length ``n`` indexed by row.

        Returns
        -------
        BandedMatrix
        """
        kl = max([-offset for offset in diagonals if offset < 0], default=0)
        ku = max([offset for offset in diagonals if offset > 0], default=0)
        data = np.zeros((n, kl + ku + 1))
        for offset, values in diagonals.items():
            data[:, offset + kl] = values

        return cls(data, kl, ku)

    @classmethod
    def from_dense(cls, a: np.ndarray, kl: Optional[int] = None, ku: Optional[int] = None) -> "BandedMatrix":
        """Band storage of a dense square array; semi-bandwidths are detected when not given."""
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("`a` should be a square two-dimensional array.")
        rows, cols = np.nonzero(a)
        if kl is None:
            kl = int(max(0, (rows - cols).max(initial=0)))
        if ku is None:
            ku = int(max(0, (cols - rows).max(initial=0)))

        return cls.from_sparse(sp.coo_matrix(a), kl, ku)

    @classmethod
    def from_sparse(cls, m: sp.spmatrix, kl: int, ku: int) -> "BandedMatrix":
        """
        Band storage of a scipy sparse matrix.

        Raises
        ------
        ValueError
            If a stored non-zero lies outside the requested band.
        """
        m = sp.coo_matrix(m)
        if m.shape[0] != m.shape[1]:
            raise ValueError("Sparse matrix should be square.")
        offsets = m.col - m.row
        if offsets.size and (offsets.min() < -kl or offsets.max() > ku):
            outside = m.data[(offsets < -kl) | (offsets > ku)]
            if np.any(outside != 0.0):
                raise ValueError(f"Matrix has non-zeros outside the band kl={kl}, ku={ku}.")
        keep = (offsets >= -kl) & (offsets <= ku)
        data = np.zeros((m.shape[0], kl + ku + 1))
        np.add.at(data, (m.row[keep], offsets[keep] + kl), m.data[keep])

        return cls(data, kl, ku)

    def entry(self, i: int, j: int) -> float:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"Entry ({i}, {j}) outside a matrix of order {self.n}.")
        d = j - i + self.kl
        if d < 0 or d > self.kl + self.ku:
            return 0.0
        return float(self.data[i, d])

    def diagonal(self) -> np.ndarray:
        return self.data[:, self.kl].copy()

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        rows = np.arange(self.n)
        for d in range(self.kl + self.ku + 1):
            cols = rows + d - self.kl
            valid = (cols >= 0) & (cols < self.n)
            a[rows[valid], cols[valid]] = self.data[valid, d]
        return a

    def to_lapack(self) -> np.ndarray:
        """Band storage in the LAPACK/``scipy.linalg.solve_banded`` layout ``ab[ku + i - j, j]``."""
        ab = np.zeros((self.kl + self.ku + 1, self.n))
        rows = np.arange(self.n)
        for d in range(self.kl + self.ku + 1):
            cols = rows + d - self.kl
            valid = (cols >= 0) & (cols < self.n)
            ab[self.ku + self.kl - d, cols[valid]] = self.data[valid, d]
        return ab

    def to_sparse(self) -> sp.csr_matrix:
        offsets = np.arange(-self.kl, self.ku + 1)
        diagonals = []
        for d, offset in enumerate(offsets):
            # scipy.sparse.diags takes diagonals indexed from their first stored entry
            if offset >= 0:
                diagonals.append(self.data[:self.n - offset, d])
            else:
                diagonals.append(self.data[-offset:, d])
        return sp.diags(diagonals, offsets, shape=(self.n, self.n), format="csr")

    def is_symmetric(self, rtol: float = 0.0) -> bool:
        if self.kl != self.ku:
            return False
        a = self.to_sparse()
        difference = abs(a - a.T).max() if a.nnz else 0.0
        return difference <= rtol * max(abs(a).max(), 1.0)

    def dot(self, x: np.ndarray) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise DimensionMismatchError(f"Vector of length {x.shape} does not match a matrix of order {self.n}.")
        return band_matvec(self.data, self.n, self.kl, self.ku, x, np.empty(self.n))

    def __matmul__(self, x: np.ndarray) -> np.ndarray:
        return self.dot(x)

    def __repr__(self) -> str:
        return f"BandedMatrix(n={self.n}, kl={self.kl}, ku={self.ku})"
