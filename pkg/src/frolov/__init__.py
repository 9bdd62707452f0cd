"""Frolov cubature on admissible lattices.

The package builds admissible lattices from integer polynomials with small
discriminant, enumerates their points in the unit cube, and measures exact
worst-case integration errors in zero-boundary Sobolev spaces of dominating
mixed smoothness.  Sparse grids and the Fibonacci lattice are included for
comparison, together with an explicit upper error bound.
"""

from .bounds import BoundInputs, bound_constant, m_bound, theoretical_bound
from .enumeration import EnumerationResult, enumerate_points, qr_split
from .exceptions import (
    CoefficientOverflowError,
    FrolovError,
    InvalidSmoothnessError,
    PointSetFormatError,
    PointSetValidationError,
    SingularMatrixError,
    UnsupportedDimensionError,
    UnsupportedSmoothnessError,
)
from .kernels import (
    GramianInverse,
    SmoothnessVector,
    boundary_representer,
    gram_inverse,
    initial_error,
    k_base,
    k_tensor,
    k_zero,
    kernel_double_integral,
    norm_equivalence_constant,
    riesz_tensor,
    riesz_univariate,
)
from .lattice import (
    LatticeBasis,
    ScaledBasis,
    admissibility_check,
    lll_reduce,
    scale_for_n,
    stable_representation,
    vandermonde,
)
from .pointset import PointSet, read_pointset, write_pointset
from .polynomials import (
    GeneratingPolynomial,
    check_irreducible_mod2,
    discriminant,
    get_classical,
    get_improved,
)
from .rules import (
    SparseGridSpec,
    fibonacci_rule,
    frolov_rule,
    lattice_basis,
    load_pointset,
    sparse_grid_rule,
    sparse_grid_size,
    trapezoid_rule,
)
from .wce import CubatureRule, WceReport, fit_rate, worst_case_error

__version__ = "0.1.0"
