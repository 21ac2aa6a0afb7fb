"""Divisor and curve class spaces, nef / effective cones, and the predicate
that every nontrivial nef class is big.

Coordinates for the divisor class space are fixed once per fan: the rows of
the HNF kernel basis of the ray matrix give a projection of ray-coefficient
vectors whose kernel is exactly the subspace of principal (numerically
trivial) divisors.  Curve classes, given as relation vectors orthogonal to
the ray matrix, get the dual coordinates, so the intersection pairing is the
standard dot product.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import linalg
from .cones import Cone, Membership, cone_from_generators
from .fans import Fan, ensure_valid, is_complete, walls
from .linalg import IntMat, RatVec, Scalar


@dataclass(frozen=True)
class DivisorClassSpace:
    """Chosen rational coordinates for the divisor class space of a fan."""

    fan: Fan
    projection: IntMat  # rho x m, rows span the relations among the rays

    @property
    def n_rays(self) -> int:
        return self.fan.n_rays

    @property
    def picard_rank(self) -> int:
        return len(self.projection)

    def project(self, coefficients: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Class coordinates of a divisor given by ray coefficients."""
        if len(coefficients) != self.n_rays:
            raise ValueError("divisor coefficient vector has wrong length")
        return tuple(linalg.dot(row, coefficients) for row in self.projection)

    def divisor_class(self, coefficients: Sequence[Scalar]) -> "DivisorClass":
        coeffs = tuple(coefficients)
        return DivisorClass(coeffs, self.project(coeffs))

    def curve_coords(self, relation: Sequence[Scalar]) -> RatVec:
        """Coordinates of a curve class given by a relation vector."""
        if len(relation) != self.n_rays:
            raise ValueError("relation vector has wrong length")
        sol = linalg.lin_solve(linalg.transpose(self.projection), relation)
        if sol is None:
            raise ValueError("vector is not orthogonal to the ray matrix")
        return sol

    def curve_class(self, relation: Sequence[Scalar]) -> "CurveClass":
        rel = tuple(relation)
        return CurveClass(rel, self.curve_coords(rel))


@dataclass(frozen=True)
class DivisorClass:
    """A divisor up to numerical equivalence.

    Two coefficient vectors differing by the row space of the ray-pairing map
    have equal ``coords``; that projection is the class.
    """

    coefficients: tuple[Scalar, ...]
    coords: tuple[Scalar, ...]


@dataclass(frozen=True)
class CurveClass:
    relation: tuple[Scalar, ...]
    coords: RatVec


@functools.lru_cache(maxsize=None)
def class_space(fan: Fan) -> DivisorClassSpace:
    """Deterministic class-space coordinates; Picard rank is m - n."""
    ensure_valid(fan)
    if not is_complete(fan):
        raise ValueError("class space requires a complete fan")
    projection = linalg.integer_kernel(fan.rays)
    assert len(projection) == fan.n_rays - fan.dim
    return DivisorClassSpace(fan, projection)


@functools.lru_cache(maxsize=None)
def mori_cone(fan: Fan) -> Cone:
    """Cone of effective curve classes, generated by all wall relations."""
    space = class_space(fan)
    gens = [space.curve_coords(w.relation) for w in walls(fan)]
    return cone_from_generators(gens, ambient_dim=space.picard_rank)


@functools.lru_cache(maxsize=None)
def nef_cone(fan: Fan) -> Cone:
    """Divisor classes nonnegative on every effective curve class."""
    return mori_cone(fan).dual()


@functools.lru_cache(maxsize=None)
def pseudo_effective_cone(fan: Fan) -> Cone:
    """Cone spanned by the classes of the prime invariant divisors."""
    space = class_space(fan)
    gens = linalg.transpose(space.projection)
    return cone_from_generators(gens, ambient_dim=space.picard_rank)


def is_big(fan: Fan, divisor: Sequence[Scalar] | DivisorClass) -> bool:
    """Big means interior to the pseudo-effective cone."""
    coords = (
        divisor.coords
        if isinstance(divisor, DivisorClass)
        else class_space(fan).project(divisor)
    )
    return pseudo_effective_cone(fan).membership(coords) is Membership.INTERIOR


def is_projective(fan: Fan) -> bool:
    """Projectivity of the variety: the nef cone is full-dimensional."""
    return nef_cone(fan).dim() == class_space(fan).picard_rank


def boundary_meets_only_at_zero(fan: Fan) -> bool:
    """Whether the nef and pseudo-effective boundaries meet only at zero,
    i.e. every nontrivial nef class is big.

    It suffices to test the extremal rays of the nef cone: any nonzero nef
    class is a nonnegative combination of them, and adding points of a convex
    full-dimensional cone to one of its interior points stays interior, so if
    every extremal ray is big then so is every nonzero nef class.  Conversely
    a non-big extremal ray is itself a nonzero point of both boundaries.
    """
    nef = nef_cone(fan)
    assert nef.is_pointed, "the nef cone of a complete fan is pointed"
    pe = pseudo_effective_cone(fan)
    return all(pe.membership(ray) is Membership.INTERIOR for ray in nef.rays)


def nef_equals_pe(fan: Fan) -> bool:
    """Whether every effective divisor class is nef."""
    return nef_cone(fan) == pseudo_effective_cone(fan)


def _lift_class(space: DivisorClassSpace, coords: Sequence[Scalar]) -> tuple[int, ...]:
    """Integer ray-coefficient vector mapping to a positive multiple of
    ``coords`` (deterministic)."""
    sol = linalg.lin_solve(space.projection, coords)
    assert sol is not None, "projection has full row rank"
    denom = 1
    for x in sol:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return tuple(int(Fraction(x) * denom) for x in sol)


def has_nontrivial_nonbig_nef(fan: Fan) -> Optional[DivisorClass]:
    """A nef extremal ray on the pseudo-effective boundary, or None.

    When present, the witness is returned with an integer ray-coefficient
    representative; its complete linear system defines a fibration to a
    lower-dimensional variety.
    """
    space = class_space(fan)
    pe = pseudo_effective_cone(fan)
    for ray in nef_cone(fan).rays:
        if pe.membership(ray) is not Membership.INTERIOR:
            coeffs = _lift_class(space, ray)
            return space.divisor_class(coeffs)
    return None
