"""Reduced torus-integral representations of power-series diagonals."""
from .errors import (
    DimensionError,
    InadmissibleParameterError,
    NonUnimodularError,
    NotCompletableError,
    NotTaylorError,
    ParseError,
    NonConvergenceError,
    PoleOnContourError,
    RhoSearchError,
    TorusDiagError,
    ValidationError,
    ZeroPolynomialError,
)
from .geometry import (
    AdmissibilityReport,
    Contour,
    Polytope,
    check_t_bounds,
    find_rho,
    map_polytope,
    newton_polytope,
    project_polytope,
    rho_in_E0,
    t_bounds,
)
from .lattice import (
    DiagonalSpec,
    IntMatrix,
    complete_to_unimodular,
    det,
    inverse_unimodular,
    is_primitive,
    validate_diagonal_basis,
)
from .laurent import LaurentPolynomial, RationalFunction, monomial_substitute, specialize, substitute_rational
from .parser import parse_expression, parse_rational
from .quadrature import QuadratureResult, converge, eval_original, eval_reduced, torus_mean
from .reduction import ReducedRepresentation, reduce, transported_contour, verify_reduction
from .series import diagonal_coefficients, diagonal_partial_sum, taylor_coefficients

__version__ = "0.1.0"
