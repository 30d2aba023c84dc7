from .grid import GridSpec, build_grid, assemble_monolithic, node_coordinates, sample_function, boundary_lifting
from .partition import Partition, DerivedNode, NodeClassification, make_partition, classify_nodes
