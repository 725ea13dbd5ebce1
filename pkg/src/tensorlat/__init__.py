"""Exact arithmetic for Euclidean and Hermitian lattices over imaginary quadratic fields."""
from .number_field import (
    EUCLIDEAN_MINIMA,
    FieldElement,
    FieldError,
    QuadField,
    elements_of_norm,
    euclidean_divide,
    euclidean_minimum,
    make_field,
)
from .radical import Radical
from .zlattice import (
    LatticeError,
    ShortVectorSet,
    ZLattice,
    extremal_bound,
    is_extremal,
    is_isometric,
    is_perfect,
    isometry,
    minimal_vectors,
    perfection_rank,
    short_vectors,
    tensor_z,
    zl_det,
    zl_dual,
    zl_make,
    zl_minimum,
)
from .hermitian import (
    DrResult,
    HermitianError,
    HermLattice,
    certify_d3_at_least,
    d_r,
    herm_disc,
    herm_dual,
    herm_isometric,
    herm_isometry,
    herm_make,
    herm_minimum,
    herm_short_vectors,
    orthogonal_decompose,
    tensor_herm,
    tensor_rank_bound,
    trace_lattice,
)
from .certify import (
    Certificate,
    RepCount,
    a_set_profile,
    certify_48,
    certify_tensor_min,
    count_isometric_sublattices,
    tensor_perfection_report,
)
from . import catalog

__version__ = "0.1.0"
