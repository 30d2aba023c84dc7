from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..helper.exceptions import InvalidPartitionError
from .grid import GridSpec


def _block_edges(elements: int, blocks: int) -> np.ndarray:
    """Edges of ``blocks`` near-equal element blocks; the first ``elements % blocks`` get one more."""
    size, extra = divmod(elements, blocks)
    sizes = np.full(blocks, size, dtype=np.int64)
    sizes[:extra] += 1

    return np.concatenate([[0], np.cumsum(sizes)])


@dataclass(frozen=True, eq=False)
class Partition:
    """
    Coarse ``px x py`` decomposition of the element cells of a grid.

    A grid of ``nx x ny`` interior nodes has ``(nx + 1) x (ny + 1)`` element
    cells; cell ``(c, r)`` spans node columns ``c - 1 .. c`` and node rows
    ``r - 1 .. r`` (index -1 and nx/ny being boundary). The cells are split
    into near-equal blocks, and cuts run along the node lines between blocks,
    so nodes on a cut are shared by the closures of the adjacent subdomains.
    Subdomain ids are row-major over blocks: ``alpha = by * px + bx``.

    Attributes
    ----------
    nx, ny : int
        Grid dimensions the partition was built for.
    px, py : int
        Subdomain counts along x and y.
    x_edges, y_edges : np.ndarray
        Element-block edges, length ``px + 1`` and ``py + 1``.
    """
    nx: int
    ny: int
    px: int
    py: int
    x_edges: np.ndarray
    y_edges: np.ndarray

    @property
    def p(self) -> int:
        return self.px * self.py

    @property
    def x_cuts(self) -> List[int]:
        """Node columns carrying a cut."""
        return [int(e) - 1 for e in self.x_edges[1:-1]]

    @property
    def y_cuts(self) -> List[int]:
        return [int(e) - 1 for e in self.y_edges[1:-1]]

    def block_of(self, subdomain: int) -> Tuple[int, int]:
        self.check_subdomain(subdomain)
        return subdomain % self.px, subdomain // self.px

    def check_subdomain(self, subdomain: int) -> None:
        if not 0 <= subdomain < self.p:
            raise InvalidPartitionError(f"Subdomain {subdomain} does not exist in a partition of {self.p}.")

    def subdomain_of_element(self, c: int, r: int) -> int:
        """Subdomain owning element cell ``(c, r)``."""
        if not (0 <= c <= self.nx and 0 <= r <= self.ny):
            raise IndexError(f"Element ({c}, {r}) outside a grid of {self.nx + 1}x{self.ny + 1} cells.")
        bx = int(np.searchsorted(self.x_edges, c, side="right")) - 1
        by = int(np.searchsorted(self.y_edges, r, side="right")) - 1

        return by * self.px + bx

    def element_ranges(self, subdomain: int) -> Tuple[range, range]:
        """Cell columns and rows owned by a subdomain."""
        bx, by = self.block_of(subdomain)
        return (range(int(self.x_edges[bx]), int(self.x_edges[bx + 1])),
                range(int(self.y_edges[by]), int(self.y_edges[by + 1])))

    def closure_ranges(self, subdomain: int) -> Tuple[range, range]:
        """Interior node columns and rows in the closure of a subdomain."""
        bx, by = self.block_of(subdomain)
        return (range(max(int(self.x_edges[bx]) - 1, 0), min(int(self.x_edges[bx + 1]), self.nx)),
                range(max(int(self.y_edges[by]) - 1, 0), min(int(self.y_edges[by + 1]), self.ny)))

    def internal_ranges(self, subdomain: int) -> Tuple[range, range]:
        """Node columns and rows strictly inside a subdomain (off every cut)."""
        bx, by = self.block_of(subdomain)
        return (range(int(self.x_edges[bx]), int(self.x_edges[bx + 1]) - 1),
                range(int(self.y_edges[by]), int(self.y_edges[by + 1]) - 1))

    def internal_shape(self, subdomain: int) -> Tuple[int, int]:
        """Extents ``(mx, my)`` of the internal node block."""
        columns, rows = self.internal_ranges(subdomain)
        return len(columns), len(rows)

    def owned_ranges(self, subdomain: int) -> Tuple[range, range]:
        """
        Node columns and rows owned by a subdomain: its internal nodes plus the cut lines on its low side.

        Owned blocks tile the grid, so their sizes add up to ``n``.
        """
        bx, by = self.block_of(subdomain)
        return (range(max(int(self.x_edges[bx]) - 1, 0), int(self.x_edges[bx + 1]) - 1),
                range(max(int(self.y_edges[by]) - 1, 0), int(self.y_edges[by + 1]) - 1))

    def owned_nodes(self, subdomain: int) -> np.ndarray:
        """Global indices of the owned nodes, lexicographic."""
        return _block_nodes(self.nx, *self.owned_ranges(subdomain))

    def local_shape(self, subdomain: int) -> Tuple[int, int]:
        """Extents of the owned block; its Dirichlet problem is the local problem of size ``~ n / p``."""
        columns, rows = self.owned_ranges(subdomain)
        return len(columns), len(rows)

    def local_size(self, subdomain: int) -> int:
        mx, my = self.local_shape(subdomain)
        return mx * my

    def center_subdomain(self) -> int:
        """Subdomain owning the element cell at the centre of the grid."""
        return self.subdomain_of_element((self.nx + 1) // 2, (self.ny + 1) // 2)


def make_partition(grid: GridSpec, px: int, py: int) -> Partition:
    """
    Split the element cells of ``grid`` into ``px x py`` near-equal blocks.

    Block sizes along a direction differ by at most one element, which keeps
    every local problem close to ``n / p`` unknowns.

    Raises
    ------
    InvalidPartitionError
        If a count is not a positive integer or exceeds the element count along its direction.
    """
    for name, value, elements in (("px", px, grid.nx + 1), ("py", py, grid.ny + 1)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise InvalidPartitionError(f"`{name}` should be an integer, got {type(value).__name__}.")
        if not 1 <= value <= elements:
            raise InvalidPartitionError(f"`{name}` should be between 1 and {elements} "
                                        f"(the element count), got {value}.")

    return Partition(grid.nx, grid.ny, int(px), int(py),
                     _block_edges(grid.nx + 1, int(px)), _block_edges(grid.ny + 1, int(py)))


@dataclass(frozen=True)
class DerivedNode:
    """An original node paired with one of the subdomains whose closure contains it."""
    original_node: int
    subdomain: int


@dataclass(frozen=True, eq=False)
class NodeClassification:
    """
    Internal/interface split of the closure nodes of every subdomain.

    Attributes
    ----------
    internal : list of np.ndarray
        Per subdomain, global indices of its internal nodes (multiplicity 1), lexicographic.
    interface : list of np.ndarray
        Per subdomain, global indices of its interface nodes (multiplicity >= 2), lexicographic.
    interface_nodes : np.ndarray
        Global interface node list, ascending.
    multiplicity : np.ndarray
        Number of subdomain closures containing each node.
    """
    internal: List[np.ndarray]
    interface: List[np.ndarray]
    interface_nodes: np.ndarray
    multiplicity: np.ndarray

    @property
    def interface_multiplicity(self) -> np.ndarray:
        return self.multiplicity[self.interface_nodes]

    @property
    def derived_node_count(self) -> int:
        return int(self.multiplicity.sum())

    def closure(self, subdomain: int) -> np.ndarray:
        return np.union1d(self.internal[subdomain], self.interface[subdomain])

    def derived_nodes(self, subdomain: int) -> List[DerivedNode]:
        return [DerivedNode(int(node), subdomain) for node in self.closure(subdomain)]


def _block_nodes(nx: int, columns: range, rows: range) -> np.ndarray:
    return (np.asarray(rows)[:, None] * nx + np.asarray(columns)[None, :]).ravel()


def classify_nodes(grid: GridSpec, partition: Partition) -> NodeClassification:
    """
    Classify every node of the grid as internal to one subdomain or on the interface.

    Raises
    ------
    InvalidPartitionError
        If the partition was built for a different grid.
    """
    if (partition.nx, partition.ny) != (grid.nx, grid.ny):
        raise InvalidPartitionError(f"Partition built for a {partition.nx}x{partition.ny} grid "
                                    f"cannot classify a {grid.nx}x{grid.ny} grid.")

    on_x_cut = np.zeros(grid.nx, dtype=np.int64)
    on_x_cut[partition.x_cuts] = 1
    on_y_cut = np.zeros(grid.ny, dtype=np.int64)
    on_y_cut[partition.y_cuts] = 1
    multiplicity = ((1 + on_y_cut)[:, None] * (1 + on_x_cut)[None, :]).ravel()

    internal, interface = [], []
    for subdomain in range(partition.p):
        nodes = _block_nodes(grid.nx, *partition.closure_ranges(subdomain))
        shared = multiplicity[nodes] >= 2
        internal.append(nodes[~shared])
        interface.append(nodes[shared])

    return NodeClassification(internal, interface, np.flatnonzero(multiplicity >= 2), multiplicity)
