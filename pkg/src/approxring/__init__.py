"""Approximate rings and ideals over finite descriptive spaces."""

from .errors import ApproxError, FeasibilityError, InputError
from .ideals import (
    ClassificationReport,
    classify_ideal,
    colon,
    intersect_ideals,
    is_approx_ideal,
    is_one_absorbing_primary,
    is_p_primary,
    is_prime,
    is_primary,
    is_semi_primary,
    product_instance,
    quotient,
    radical,
)
from .instance_io import load_instance, parse_instance, serialize_instance
from .space import DescriptiveSpace, ProximityRelation, check_dp_axioms
from .structures import AlgebraInstance, analyze_structure, locate_identities

__version__ = "0.1.0"

__all__ = [
    "AlgebraInstance", "ApproxError", "ClassificationReport", "DescriptiveSpace", "FeasibilityError",
    "InputError", "ProximityRelation", "analyze_structure", "check_dp_axioms", "classify_ideal",
    "colon", "intersect_ideals", "is_approx_ideal", "is_one_absorbing_primary", "is_p_primary",
    "is_prime", "is_primary", "is_semi_primary", "load_instance", "locate_identities",
    "parse_instance", "product_instance", "quotient", "radical", "serialize_instance",
]
