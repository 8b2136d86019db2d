"""Mahler measures of height-one polynomials and Lyapunov exponents of
binary constant-length substitution cocycles."""

from .block2d import (
    BlockSubstitution2D,
    fourier_matrix_2d,
    has_coincidence,
    named_block,
    parse_blocks,
    qr_polynomial_2d,
)
from .cocycle import (
    CocycleParams,
    DegenerateCocycleError,
    LyapunovEstimate,
    birkhoff_logdet,
    cocycle_product,
    eigen_exponent,
    lyapunov_max,
    lyapunov_min,
    lyapunov_pair,
)
from .construct import (
    Coincidence,
    ConstructionError,
    SearchRecord,
    borwein_search,
    canonical_form,
    enumerate_substitutions,
    substitution_from_signs,
)
from .mahler import LaurentPoly, MahlerResult, mahler_jensen, mahler_multivariate, mahler_quadrature, parse_laurent
from .polynomial import (
    ComplexPolynomial,
    IntPolynomial,
    PolyClass,
    PolynomialError,
    classify,
    parse_poly,
    poly_mul,
    reciprocal_of,
)
from .roots import RootFindingError, find_roots
from .substitution import (
    BinarySubstitution,
    FourierMatrix,
    PeriodicClass,
    SubstitutionError,
    decompose,
    evaluate,
    fourier_matrix,
    is_primitive,
    parse_substitution,
    periodic_class,
    qr_polynomial,
    substitution_matrix,
)

__version__ = "0.1.0"
