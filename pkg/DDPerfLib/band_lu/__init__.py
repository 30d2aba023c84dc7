from .banded_matrix import BandedMatrix
from .banded_lu import BandedLU, factor, solve, flop_model, SINGULARITY_TOLERANCE
