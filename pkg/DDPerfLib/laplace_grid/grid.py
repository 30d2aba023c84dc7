from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..band_lu.banded_matrix import BandedMatrix
from ..helper.exceptions import InvalidGridError


@dataclass(frozen=True)
class GridSpec:
    """
    Structured grid of interior unknowns of a unit-spaced 2D Dirichlet problem.

    Interior node ``(i, j)``, ``0 <= i < nx``, ``0 <= j < ny``, has row-major
    index ``j * nx + i`` and sits at ``((i + 1) h, (j + 1) h)``; the Dirichlet
    boundary runs along ``i = -1``, ``i = nx``, ``j = -1`` and ``j = ny``.

    Attributes
    ----------
    nx : int
        Interior unknowns along x.
    ny : int
        Interior unknowns along y.
    h : float
        Mesh spacing, 1 by default.
    """
    nx: int
    ny: int
    h: float = 1.0

    @property
    def n(self) -> int:
        return self.nx * self.ny

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            raise IndexError(f"Node ({i}, {j}) is not an interior node of a {self.nx}x{self.ny} grid.")
        return j * self.nx + i

    def position(self, index: int) -> Tuple[int, int]:
        """Inverse of :meth:`index`: ``(i, j)`` of a row-major node index."""
        if not 0 <= index < self.n:
            raise IndexError(f"Node index {index} outside a grid of {self.n} nodes.")
        return index % self.nx, index // self.nx


def build_grid(nx: int, ny: int, h: float = 1.0) -> GridSpec:
    """
    Build the grid of ``nx * ny`` interior unknowns.

    Raises
    ------
    InvalidGridError
        If a dimension is not a positive integer or ``h`` is not positive.
    """
    for name, value in (("nx", nx), ("ny", ny)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise InvalidGridError(f"`{name}` should be an integer, got {type(value).__name__}.")
        if value < 1:
            raise InvalidGridError(f"`{name}` should be at least 1, got {value}.")
    if not h > 0:
        raise InvalidGridError(f"`h` should be positive, got {h}.")

    return GridSpec(int(nx), int(ny), float(h))


def assemble_monolithic(grid: GridSpec) -> BandedMatrix:
    """
    Five-point Laplace matrix of the grid with homogeneous Dirichlet data.

    Rows carry 4 on the diagonal and -1 for every interior x- or y-neighbour;
    couplings to boundary nodes are dropped (``h = 1`` scaling). The matrix is
    symmetric positive definite with semi-bandwidth ``nx``.

    Parameters
    ----------
    grid : GridSpec

    Returns
    -------
    BandedMatrix
        Order ``grid.n``, ``kl = ku = min(nx, n - 1)``.
    """
    nx, n = grid.nx, grid.n
    b = min(nx, n - 1)
    data = np.zeros((n, 2 * b + 1))
    data[:, b] = 4.0
    if b == 0:
        return BandedMatrix(data, 0, 0)

    i = np.arange(n) % nx
    # x-neighbours exist unless the node sits on the left/right end of its row
    data[:, b - 1] = np.where(i > 0, -1.0, 0.0)
    data[:, b + 1] = np.where(i < nx - 1, -1.0, 0.0)
    if b == nx:
        # y-neighbours; the band zeroes the rows past the first/last grid line
        data[:, 0] = -1.0
        data[:, 2 * b] = -1.0

    return BandedMatrix(data, b, b)


def node_coordinates(grid: GridSpec, origin: Tuple[float, float] = (0.0, 0.0)) -> Tuple[np.ndarray, np.ndarray]:
    """x and y coordinates of the interior nodes in row-major order."""
    i = np.arange(grid.n) % grid.nx
    j = np.arange(grid.n) // grid.nx
    x = origin[0] + (i + 1) * grid.h
    y = origin[1] + (j + 1) * grid.h

    return x, y


def sample_function(grid: GridSpec, func: Callable[[np.ndarray, np.ndarray], np.ndarray],
                    origin: Tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """Values of ``func(x, y)`` at the interior nodes."""
    x, y = node_coordinates(grid, origin)

    return np.asarray(func(x, y), dtype=np.float64) * np.ones(grid.n)


def boundary_lifting(grid: GridSpec, func: Callable[[np.ndarray, np.ndarray], np.ndarray],
                     origin: Tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """
    Load vector moving Dirichlet data ``u = func`` on the boundary to the right-hand side.

    Each interior node next to the boundary receives the boundary values of its
    boundary neighbours, so that ``A u = f`` reproduces ``func`` at the nodes
    whenever the five-point stencil annihilates it (e.g. any linear function).
    """
    h = grid.h
    x0, y0 = origin
    load = np.zeros((grid.ny, grid.nx))
    xs = x0 + (np.arange(grid.nx) + 1) * h
    ys = y0 + (np.arange(grid.ny) + 1) * h
    x_left, x_right = x0, x0 + (grid.nx + 1) * h
    y_bottom, y_top = y0, y0 + (grid.ny + 1) * h

    load[:, 0] += func(np.full(grid.ny, x_left), ys)
    load[:, -1] += func(np.full(grid.ny, x_right), ys)
    load[0, :] += func(xs, np.full(grid.nx, y_bottom))
    load[-1, :] += func(xs, np.full(grid.nx, y_top))

    return load.ravel()
