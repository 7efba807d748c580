"""Exact computational algebra for multiview camera geometry.

The package constructs the multiview ideal of a configuration of pinhole
cameras over exact rational arithmetic, computes its Groebner degenerations
and monomial models, enumerates the initial ideals of the torus-fixed
configurations with their mixed subdivisions, certifies the collinear-camera
degeneration chain, and takes censuses of the monomial points of the
associated multigraded Hilbert scheme together with their tangent spaces.
"""

from .cameras import (
    CameraConfig, collinear_cameras, focal_points, fundamental_matrix,
    is_generic, multiview_generators, multiview_ideal, toric_cameras,
)
from .exactalg import EpsRational, Matrix, det, eps, kernel, rank
from .groebner import (
    IdealPresentation, eliminate, hilbert_value, ideal, ideal_equal,
    initial_ideal, intersect, normal_form, reduced_groebner_basis,
    universal_groebner_check,
)
from .monomial import (
    MonomialIdeal, collinear_initial_ideal, generic_initial_ideal,
    is_borel_fixed, minimal_primes, multiview_hilbert_function,
    standard_monomial_count, stanley_reisner_complex,
)
from .polyring import LexOrder, Polynomial, Ring, WeightOrder, block_order
from .tangent import tangent_dimension

__version__ = "0.1.0"

__all__ = [
    "CameraConfig", "collinear_cameras", "focal_points", "fundamental_matrix",
    "is_generic", "multiview_generators", "multiview_ideal", "toric_cameras",
    "EpsRational", "Matrix", "det", "eps", "kernel", "rank",
    "IdealPresentation", "eliminate", "hilbert_value", "ideal", "ideal_equal",
    "initial_ideal", "intersect", "normal_form", "reduced_groebner_basis",
    "universal_groebner_check", "MonomialIdeal", "collinear_initial_ideal",
    "generic_initial_ideal", "is_borel_fixed", "minimal_primes",
    "multiview_hilbert_function", "standard_monomial_count",
    "stanley_reisner_complex", "LexOrder", "Polynomial", "Ring", "WeightOrder",
    "block_order", "tangent_dimension", "__version__",
]
