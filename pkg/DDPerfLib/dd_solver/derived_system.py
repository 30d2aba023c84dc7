from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np
import scipy.sparse as sp

from ..band_lu import BandedLU, BandedMatrix, factor, solve
from ..helper._helper import getLogger
from ..helper.exceptions import DimensionMismatchError, SingularMatrixError
from ..laplace_grid import GridSpec, NodeClassification, Partition
from .worker_pool import WorkerPool

logger = getLogger(__name__)


@dataclass(eq=False)
class LocalSystem:
    """
    Blocks of one subdomain matrix, ordered internal-then-interface.

    Attributes
    ----------
    subdomain : int
        Subdomain id.
    shape : tuple of int
        Extents ``(mx, my)`` of the internal node block.
    internal_nodes : np.ndarray
        Global indices of the internal unknowns (lexicographic).
    interface_nodes : np.ndarray
        Global indices of the interface nodes in the closure.
    interface_positions : np.ndarray
        Positions of ``interface_nodes`` in the assembled interface vector.
    a_ii : BandedMatrix or None
        Internal block, ``None`` when the subdomain has no internal node.
    a_ig : scipy.sparse.csr_matrix
        Internal-interface coupling.
    a_gg : scipy.sparse.csr_matrix
        Interface block, cut-line couplings weighted by the share of the subdomain.
    lu : BandedLU or None
        Factors of ``a_ii`` once :func:`factor_internals` ran.
    """
    subdomain: int
    shape: tuple
    internal_nodes: np.ndarray
    interface_nodes: np.ndarray
    interface_positions: np.ndarray
    a_ii: Optional[BandedMatrix]
    a_ig: sp.csr_matrix
    a_gg: sp.csr_matrix
    lu: Optional[BandedLU] = None

    @property
    def size(self) -> int:
        return len(self.internal_nodes)

    @property
    def factored(self) -> bool:
        return self.a_ii is None or self.lu is not None

    def solve_internal(self, rhs: np.ndarray) -> np.ndarray:
        if self.a_ii is None:
            return np.zeros(0)
        return solve(self.lu, rhs)

    def schur_product(self, x_local: np.ndarray) -> np.ndarray:
        """``(A_GG - A_GI A_II^-1 A_IG) x`` on the interface nodes of this subdomain."""
        y = self.a_gg @ x_local
        if self.a_ii is not None:
            y -= self.a_ig.T @ self.solve_internal(self.a_ig @ x_local)
        return y


@dataclass(eq=False)
class DerivedSystem:
    """
    Non-overlapping decomposition of the five-point system into subdomain blocks.

    Every derived node (node, subdomain) lives in exactly one local system, so
    the internal blocks form a strictly block-diagonal matrix; the original
    system is recovered by summing the restricted local matrices.

    Attributes
    ----------
    grid : GridSpec
    partition : Partition
    classification : NodeClassification
    local_systems : list of LocalSystem
        One per subdomain, in subdomain order.
    interface_nodes : np.ndarray
        Global indices of the assembled interface unknowns.
    interface_diagonal : np.ndarray
        Diagonal of the assembled ``A_GG``.
    """
    grid: GridSpec
    partition: Partition
    classification: NodeClassification
    local_systems: List[LocalSystem] = field(default_factory=list)
    interface_nodes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    interface_diagonal: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def p(self) -> int:
        return self.partition.p

    @property
    def interface_dimension(self) -> int:
        return len(self.interface_nodes)

    @property
    def factored(self) -> bool:
        return all(local.factored for local in self.local_systems)

    @property
    def flop_count(self) -> int:
        return sum(local.lu.flop_count for local in self.local_systems if local.lu is not None)

    def apply(self, u: np.ndarray) -> np.ndarray:
        """Product of the assembled matrix with a global vector, summed over subdomains."""
        u = np.asarray(u, dtype=np.float64)
        if u.shape != (self.grid.n,):
            raise DimensionMismatchError(f"Vector of shape {u.shape} does not match {self.grid.n} unknowns.")
        y = np.zeros(self.grid.n)
        for local in self.local_systems:
            u_g = u[local.interface_nodes]
            if local.a_ii is not None:
                u_i = u[local.internal_nodes]
                y[local.internal_nodes] += local.a_ii.dot(u_i) + local.a_ig @ u_g
                y[local.interface_nodes] += local.a_ig.T @ u_i
            y[local.interface_nodes] += local.a_gg @ u_g
        return y

    def assemble_dense(self) -> np.ndarray:
        """Dense ``sum_alpha R_alpha^T A_alpha R_alpha``, for checks on small grids."""
        a = np.zeros((self.grid.n, self.grid.n))
        for local in self.local_systems:
            internal, interface = local.internal_nodes, local.interface_nodes
            if local.a_ii is not None:
                a[np.ix_(internal, internal)] += local.a_ii.to_dense()
                a[np.ix_(internal, interface)] += local.a_ig.toarray()
                a[np.ix_(interface, internal)] += local.a_ig.T.toarray()
            a[np.ix_(interface, interface)] += local.a_gg.toarray()
        return a


def _closure_matrix(grid: GridSpec, cell_columns: range, cell_rows: range,
                    columns: range, rows: range) -> sp.csr_matrix:
    """
    Matrix of a block of element cells on the nodes of its closure.

    Each cell carries half of each of its four edges, an edge adding
    ``[[w, -w], [-w, w]]`` on its end points (boundary end points dropped).
    An edge inside the block thus gets its full weight, an edge along a cut
    gets half of it.
    """
    c, r = np.meshgrid(np.asarray(cell_columns), np.asarray(cell_rows))
    c, r = c.ravel(), r.ravel()
    width = len(columns)

    def local_index(i, j):
        inside = (i >= 0) & (i < grid.nx) & (j >= 0) & (j < grid.ny)
        return np.where(inside, (j - rows.start) * width + (i - columns.start), -1)

    corners = [local_index(c - 1, r - 1), local_index(c, r - 1), local_index(c - 1, r), local_index(c, r)]
    edges = [(corners[0], corners[1]), (corners[2], corners[3]), (corners[0], corners[2]), (corners[1], corners[3])]

    entries_i, entries_j = [], []
    values = []
    for a, b in edges:
        for end in (a, b):
            keep = end >= 0
            entries_i.append(end[keep])
            entries_j.append(end[keep])
            values.append(np.full(keep.sum(), 0.5))
        both = (a >= 0) & (b >= 0)
        entries_i.extend([a[both], b[both]])
        entries_j.extend([b[both], a[both]])
        values.extend([np.full(both.sum(), -0.5)] * 2)

    size = width * len(rows)
    matrix = sp.coo_matrix((np.concatenate(values), (np.concatenate(entries_i), np.concatenate(entries_j))),
                           shape=(size, size))

    return matrix.tocsr()


def decompose(grid: GridSpec, partition: Partition, classification: NodeClassification) -> DerivedSystem:
    """
    Build the local subdomain matrices of the non-overlapping decomposition.

    Parameters
    ----------
    grid : GridSpec
    partition : Partition
    classification : NodeClassification
        Output of :func:`classify_nodes` for the same grid and partition.

    Returns
    -------
    DerivedSystem
        Unfactored system; internal blocks are banded with semi-bandwidth ``mx``.
    """
    interface_nodes = classification.interface_nodes
    interface_diagonal = np.zeros(len(interface_nodes))
    local_systems = []
    for subdomain in range(partition.p):
        cell_columns, cell_rows = partition.element_ranges(subdomain)
        columns, rows = partition.closure_ranges(subdomain)
        closure = _closure_matrix(grid, cell_columns, cell_rows, columns, rows)

        closure_nodes = (np.asarray(rows)[:, None] * grid.nx + np.asarray(columns)[None, :]).ravel()
        shared = classification.multiplicity[closure_nodes] >= 2
        internal_local = np.flatnonzero(~shared)
        interface_local = np.flatnonzero(shared)
        internal_nodes = closure_nodes[internal_local]
        local_interface_nodes = closure_nodes[interface_local]

        mx, my = partition.internal_shape(subdomain)
        a_ii = None
        if len(internal_local):
            semi_bandwidth = min(mx, len(internal_local) - 1)
            a_ii = BandedMatrix.from_sparse(closure[internal_local][:, internal_local],
                                            semi_bandwidth, semi_bandwidth)
        a_ig = closure[internal_local][:, interface_local].tocsr()
        a_gg = closure[interface_local][:, interface_local].tocsr()
        positions = np.searchsorted(interface_nodes, local_interface_nodes)
        interface_diagonal[positions] += a_gg.diagonal()

        local_systems.append(LocalSystem(subdomain, (mx, my), internal_nodes, local_interface_nodes,
                                         positions, a_ii, a_ig, a_gg))

    logger.info(f"Decomposed {grid.nx}x{grid.ny} grid into {partition.p} subdomains, "
                f"interface dimension {len(interface_nodes)}")

    return DerivedSystem(grid, partition, classification, local_systems, interface_nodes, interface_diagonal)


def factor_internals(ds: DerivedSystem, pool: Optional[WorkerPool] = None) -> DerivedSystem:
    """
    Factor every internal block by banded LU, one independent task per subdomain.

    Parameters
    ----------
    ds : DerivedSystem
    pool : WorkerPool, optional
        Pool running the factorisations; inline when omitted.

    Returns
    -------
    DerivedSystem
        A copy of ``ds`` whose local systems carry their factors.

    Raises
    ------
    SingularMatrixError
        With the id of the subdomain whose block failed.
    """
    pool = pool or WorkerPool(1)

    def factor_local(local: LocalSystem) -> LocalSystem:
        if local.a_ii is None:
            return local
        try:
            return replace(local, lu=factor(local.a_ii))
        except SingularMatrixError as error:
            raise SingularMatrixError(error.index, error.pivot, local.subdomain) from error

    return replace(ds, local_systems=pool.map(factor_local, ds.local_systems))


def _check_factored(ds: DerivedSystem) -> None:
    if not ds.factored:
        raise ValueError("Internal blocks are not factored; call factor_internals first.")


def schur_apply(ds: DerivedSystem, x: np.ndarray, pool: Optional[WorkerPool] = None) -> np.ndarray:
    """
    Apply the assembled interface Schur complement.

    Returns ``sum_alpha R_alpha^T (A_GG x_alpha - A_GI A_II^-1 A_IG x_alpha)``,
    the local products computed per subdomain and summed in subdomain order.

    Raises
    ------
    DimensionMismatchError
        If ``x`` does not have the interface dimension.
    """
    _check_factored(ds)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (ds.interface_dimension,):
        raise DimensionMismatchError(f"Interface vector of shape {x.shape} does not match "
                                     f"interface dimension {ds.interface_dimension}.")
    pool = pool or WorkerPool(1)
    products = pool.map(lambda local: local.schur_product(x[local.interface_positions]), ds.local_systems)

    y = np.zeros(ds.interface_dimension)
    for local, product in zip(ds.local_systems, products):
        y[local.interface_positions] += product
    return y


def condense_load(ds: DerivedSystem, f: np.ndarray, pool: Optional[WorkerPool] = None) -> np.ndarray:
    """Interface right-hand side ``f_G - sum_alpha R_alpha^T A_GI A_II^-1 f_I``."""
    _check_factored(ds)
    pool = pool or WorkerPool(1)

    def local_correction(local: LocalSystem) -> np.ndarray:
        if local.a_ii is None:
            return np.zeros(len(local.interface_nodes))
        return local.a_ig.T @ local.solve_internal(f[local.internal_nodes])

    corrections = pool.map(local_correction, ds.local_systems)
    g = np.array(f[ds.interface_nodes], dtype=np.float64)
    for local, correction in zip(ds.local_systems, corrections):
        g[local.interface_positions] -= correction
    return g


def back_substitute(ds: DerivedSystem, f: np.ndarray, u_interface: np.ndarray,
                    pool: Optional[WorkerPool] = None) -> np.ndarray:
    """Recover the internal unknowns ``A_II^-1 (f_I - A_IG u_G)`` and scatter the full solution."""
    _check_factored(ds)
    pool = pool or WorkerPool(1)

    def local_solution(local: LocalSystem) -> np.ndarray:
        if local.a_ii is None:
            return np.zeros(0)
        rhs = f[local.internal_nodes] - local.a_ig @ u_interface[local.interface_positions]
        return local.solve_internal(rhs)

    solutions = pool.map(local_solution, ds.local_systems)
    u = np.zeros(ds.grid.n)
    u[ds.interface_nodes] = u_interface
    for local, solution in zip(ds.local_systems, solutions):
        u[local.internal_nodes] = solution
    return u
