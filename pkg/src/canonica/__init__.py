"""Exact commutative algebra for classifying semidualizing modules at desk scale."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField, Rationals, field_from_spec  # noqa: E402
from .polynomial import GREVLEX, LEX, Polynomial, PolyRing  # noqa: E402
from .parse import format_polynomial, parse_polynomial  # noqa: E402
from .quotient import QuotientRing  # noqa: E402
from .ideals import Ideal, colon_ideal, eliminate, groebner_basis, ideal_intersection  # noqa: E402
from .modules import (FPModule, ext, free_module, free_resolution, hom_module, minimal_presentation,  # noqa: E402
                      module_from_ideal, quotient_module, tensor_module)
from .homalg import bass_numbers, depth_graded, hilbert_series, rank  # noqa: E402
from .builders import (DetRingDescriptor, build_chain, build_det_ring, build_power_quotient,  # noqa: E402
                       build_trivial_extension, power_ideal)
from .divisors import FractionalIdeal, class_of, divisorial_hull, frac_colon, frac_mul, ideals_isomorphic  # noqa: E402
from .semidualizing import is_dualizing, is_semidualizing, reflexive_order_le  # noqa: E402
from .classification import enumerate_semidualizing_det, verify_chain_cardinality  # noqa: E402

__all__ = [
    "DetRingDescriptor",
    "FPModule",
    "FractionalIdeal",
    "GREVLEX",
    "Ideal",
    "LEX",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "QQ",
    "QuotientRing",
    "Rationals",
    "bass_numbers",
    "build_chain",
    "build_det_ring",
    "build_power_quotient",
    "build_trivial_extension",
    "class_of",
    "colon_ideal",
    "depth_graded",
    "divisorial_hull",
    "eliminate",
    "enumerate_semidualizing_det",
    "ext",
    "field_from_spec",
    "format_polynomial",
    "frac_colon",
    "frac_mul",
    "free_module",
    "free_resolution",
    "groebner_basis",
    "hilbert_series",
    "hom_module",
    "ideal_intersection",
    "ideals_isomorphic",
    "is_dualizing",
    "is_semidualizing",
    "minimal_presentation",
    "module_from_ideal",
    "parse_polynomial",
    "power_ideal",
    "quotient_module",
    "rank",
    "reflexive_order_le",
    "tensor_module",
    "verify_chain_cardinality",
]
