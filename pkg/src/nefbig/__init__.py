"""Exact lattice-fan toolkit for toric nef / pseudo-effective cone geometry.

The package represents simplicial toric varieties as lattice fans, computes
their divisor and curve class cones in exact rational arithmetic, and decides
whether every nontrivial nef divisor class is big.
"""

from .batyrev import (
    GeneralityResult,
    PositiveRelationCertificate,
    PrimitiveCollection,
    PrimitiveRelation,
    focus,
    is_general,
    mori_cone_via_relations,
    primitive_collections,
    primitive_relation,
    primitive_relations,
    zero_focus_collection,
)
from .cones import Cone, Membership, cone_from_constraints, cone_from_generators
from .divisors import (
    CurveClass,
    DivisorClass,
    DivisorClassSpace,
    boundary_meets_only_at_zero,
    class_space,
    has_nontrivial_nonbig_nef,
    is_big,
    is_projective,
    mori_cone,
    nef_cone,
    nef_equals_pe,
    pseudo_effective_cone,
)
from .fans import (
    Fan,
    InvalidFanError,
    ProjectionOverlap,
    ValidationReport,
    Violation,
    Wall,
    ensure_valid,
    fan_from_json,
    fan_to_json,
    is_complete,
    is_smooth,
    minimal_cone_containing,
    project_fan,
    star_quotient_fan,
    star_subdivision,
    validate,
    walls,
)
from . import catalog, linalg

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "CurveClass",
    "DivisorClass",
    "DivisorClassSpace",
    "Fan",
    "GeneralityResult",
    "InvalidFanError",
    "Membership",
    "PositiveRelationCertificate",
    "PrimitiveCollection",
    "PrimitiveRelation",
    "ProjectionOverlap",
    "ValidationReport",
    "Violation",
    "Wall",
    "boundary_meets_only_at_zero",
    "catalog",
    "class_space",
    "cone_from_constraints",
    "cone_from_generators",
    "ensure_valid",
    "fan_from_json",
    "fan_to_json",
    "focus",
    "has_nontrivial_nonbig_nef",
    "is_big",
    "is_complete",
    "is_general",
    "is_projective",
    "is_smooth",
    "linalg",
    "minimal_cone_containing",
    "mori_cone",
    "mori_cone_via_relations",
    "nef_cone",
    "nef_equals_pe",
    "primitive_collections",
    "primitive_relation",
    "primitive_relations",
    "project_fan",
    "pseudo_effective_cone",
    "star_quotient_fan",
    "star_subdivision",
    "validate",
    "walls",
    "zero_focus_collection",
]
