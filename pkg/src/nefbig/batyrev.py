"""Primitive collections and relations, and the positive-relation classifier.

A primitive collection is a minimal non-face of the fan's underlying
simplicial complex: the set spans no cone while each proper subset does.
Its relation equates the sum of its generators to the unique positive
combination of the generators of the smallest cone containing that sum.
The cone of effective curve classes of a smooth projective fan is generated
by all such relations, which gives an independent route to the wall-based
computation.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from . import linalg
from .cones import Cone, cone_from_generators
from .divisors import class_space
from .fans import Fan, ensure_valid, is_complete, is_smooth, minimal_cone_containing
from .linalg import IntVec, RatVec


@dataclass(frozen=True)
class PrimitiveCollection:
    ray_indices: tuple[int, ...]


@dataclass(frozen=True)
class PrimitiveRelation:
    """Sum over the collection equals the positive combination on the focus."""

    collection: PrimitiveCollection
    focus: tuple[int, ...]
    coefficients: tuple[int, ...]  # aligned with focus, all positive
    relation: IntVec  # length m: +1 on the collection, -a_j on the focus


@dataclass(frozen=True)
class PositiveRelationCertificate:
    """Rays admitting a vanishing positive integer combination."""

    ray_indices: tuple[int, ...]
    coefficients: tuple[int, ...]


@dataclass(frozen=True)
class GeneralityResult:
    is_general: bool
    certificate: Optional[PositiveRelationCertificate]


@functools.lru_cache(maxsize=None)
def _faces(fan: Fan) -> frozenset[frozenset[int]]:
    faces: set[frozenset[int]] = set()
    for cone in fan.max_cones:
        for k in range(len(cone) + 1):
            for sub in itertools.combinations(cone, k):
                faces.add(frozenset(sub))
    return frozenset(faces)


@functools.lru_cache(maxsize=None)
def primitive_collections(fan: Fan) -> tuple[PrimitiveCollection, ...]:
    """All minimal non-faces, ordered by size then lexicographically."""
    ensure_valid(fan)
    faces = _faces(fan)
    found = []
    for k in range(2, fan.dim + 2):
        for combo in itertools.combinations(range(fan.n_rays), k):
            s = frozenset(combo)
            if s in faces:
                continue
            if all(s - {i} in faces for i in combo):
                found.append(PrimitiveCollection(combo))
    return tuple(found)


def focus(fan: Fan, collection: PrimitiveCollection) -> tuple[int, ...]:
    """Smallest cone containing the sum of the collection's generators."""
    total = tuple(
        sum(fan.rays[i][j] for i in collection.ray_indices) for j in range(fan.dim)
    )
    return minimal_cone_containing(fan, total)


def primitive_relation(fan: Fan, collection: PrimitiveCollection) -> PrimitiveRelation:
    """The integral relation attached to a primitive collection (smooth fans)."""
    sigma = focus(fan, collection)
    total = tuple(
        sum(fan.rays[i][j] for i in collection.ray_indices) for j in range(fan.dim)
    )
    if set(sigma) & set(collection.ray_indices):
        raise ValueError(
            f"focus {sigma} meets the collection {collection.ray_indices}"
        )
    if sigma:
        sol = linalg.lin_solve(
            linalg.transpose(fan.cone_rays(sigma)), total
        )
        assert sol is not None and all(c > 0 for c in sol)
        coeffs = []
        for c in sol:
            f = Fraction(c)
            if f.denominator != 1:
                raise ValueError(
                    "non-integral primitive relation; the fan is not smooth"
                )
            coeffs.append(int(f))
    else:
        if any(x != 0 for x in total):
            raise AssertionError("empty focus forces a vanishing sum")
        coeffs = []
    relation = [0] * fan.n_rays
    for i in collection.ray_indices:
        relation[i] = 1
    for j, a in zip(sigma, coeffs):
        relation[j] = -a
    return PrimitiveRelation(collection, sigma, tuple(coeffs), tuple(relation))


@functools.lru_cache(maxsize=None)
def primitive_relations(fan: Fan) -> tuple[PrimitiveRelation, ...]:
    return tuple(
        primitive_relation(fan, p) for p in primitive_collections(fan)
    )


def mori_cone_via_relations(fan: Fan) -> Cone:
    """Cone of curve classes generated by all primitive relations.

    For smooth projective fans this equals the wall-based cone of effective
    curve classes; the equality is the cross-check exercised in the tests.
    """
    if not is_smooth(fan) or not is_complete(fan):
        raise ValueError("primitive relations require a smooth complete fan")
    space = class_space(fan)
    gens = [space.curve_coords(rel.relation) for rel in primitive_relations(fan)]
    return cone_from_generators(gens, ambient_dim=space.picard_rank)


def zero_focus_collection(fan: Fan) -> Optional[PrimitiveCollection]:
    """A primitive collection whose generators sum to zero, if any.

    Smooth projective fans always have one; for other complete fans the
    search is still performed and may legitimately come up empty.
    """
    for p in primitive_collections(fan):
        if focus(fan, p) == ():
            return p
    return None


def _integer_certificate(witness: RatVec) -> tuple[int, ...]:
    denom = 1
    for x in witness:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in witness]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def is_general(fan: Fan) -> GeneralityResult:
    """Classify the fan by the existence of a small positive relation.

    The fan is 'special' when some subset of at most ``dim`` rays admits a
    vanishing positive integer combination, and 'general' otherwise.  Subsets
    are scanned by size then lexicographically, so the certificate is the
    first one in that order.
    """
    ensure_valid(fan)
    for k in range(1, min(fan.dim, fan.n_rays) + 1):
        for combo in itertools.combinations(range(fan.n_rays), k):
            witness = linalg.strict_positive_kernel_exists(fan.cone_rays(combo))
            if witness is not None:
                cert = PositiveRelationCertificate(combo, _integer_certificate(witness))
                return GeneralityResult(False, cert)
    return GeneralityResult(True, None)
