"""Exact rational polyhedral cones via the double description method.

A cone is stored with both descriptions in a canonical form:

* ``rays`` / ``lineality`` -- V-side: extremal rays modulo the lineality
  space, represented by their (primitive, integer) orthogonal projections
  away from the lineality space, plus an HNF lattice basis of the lineality
  space itself;
* ``facet_normals`` / ``span_equations`` -- H-side: the same data for the
  dual cone, i.e. irredundant inner facet normals modulo the span equations
  and an HNF basis of the orthogonal complement of the cone's linear span.

With this symmetric layout ``dual`` is a field swap and cone equality is
tuple equality.  Everything is exact; sorting and deterministic pivoting make
all outputs reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .linalg import IntMat, IntVec, Scalar


class Membership(Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone with canonical dual descriptions."""

    ambient_dim: int
    rays: IntMat
    lineality: IntMat
    facet_normals: IntMat
    span_equations: IntMat

    def dim(self) -> int:
        return self.ambient_dim - len(self.span_equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.span_equations

    @property
    def generators(self) -> IntMat:
        """V-description as plain generators: rays plus +/- lineality pairs."""
        gens = list(self.rays)
        for line in self.lineality:
            gens.append(line)
            gens.append(tuple(-x for x in line))
        return tuple(sorted(gens))

    @property
    def facets(self) -> IntMat:
        """H-description as plain inequalities: facets plus +/- equation pairs."""
        normals = list(self.facet_normals)
        for eq in self.span_equations:
            normals.append(eq)
            normals.append(tuple(-x for x in eq))
        return tuple(sorted(normals))

    def dual(self) -> "Cone":
        """The cone ``{u : u . v >= 0 for all v in self}``."""
        return Cone(
            ambient_dim=self.ambient_dim,
            rays=self.facet_normals,
            lineality=self.span_equations,
            facet_normals=self.rays,
            span_equations=self.lineality,
        )

    def membership(self, x: Sequence[Scalar]) -> Membership:
        """Classify ``x`` relative to the cone (relative-interior semantics).

        Points off the cone's linear span are outside; on the span, interior
        means strict on every facet of the span-restricted cone.
        """
        if len(x) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if any(linalg.dot(eq, x) != 0 for eq in self.span_equations):
            return Membership.OUTSIDE
        values = [linalg.dot(a, x) for a in self.facet_normals]
        if any(v < 0 for v in values):
            return Membership.OUTSIDE
        if all(v > 0 for v in values):
            return Membership.INTERIOR
        return Membership.BOUNDARY

    def contains(self, x: Sequence[Scalar]) -> bool:
        return self.membership(x) is not Membership.OUTSIDE

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return cone_from_constraints(
            self.facet_normals + other.facet_normals,
            self.span_equations + other.span_equations,
            self.ambient_dim,
        )

    def is_face_of(self, other: "Cone") -> bool:
        """True when this cone is a face of ``other``."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        gens = self.generators
        if not all(other.contains(g) for g in gens):
            return False
        tight = tuple(
            a for a in other.facet_normals if all(linalg.dot(a, g) == 0 for g in gens)
        )
        carved = cone_from_constraints(
            other.facet_normals, other.span_equations + tight, other.ambient_dim
        )
        return carved == self


def _reduce_mod_space(v: Sequence[Scalar], basis: IntMat) -> IntVec:
    """Primitive integer representative of ``v`` modulo ``span(basis)``.

    Uses the orthogonal projection away from the span, which is the unique
    canonical coset representative.
    """
    if not basis:
        return linalg.primitive_rational(v)
    gram = [[linalg.dot(b1, b2) for b2 in basis] for b1 in basis]
    rhs = [linalg.dot(b, v) for b in basis]
    y = linalg.lin_solve(gram, rhs)
    assert y is not None
    proj = [Fraction(x) for x in v]
    for coef, b in zip(y, basis):
        for j in range(len(proj)):
            proj[j] -= coef * b[j]
    if all(x == 0 for x in proj):
        raise ValueError("vector lies in the subtracted span")
    return linalg.primitive_rational(proj)


def _canonical_lattice_basis(rows: IntMat) -> IntMat:
    if not rows:
        return ()
    h, _ = linalg.hermite_normal_form(rows)
    return tuple(sorted(row for row in h if any(x != 0 for x in row)))


def _ddm(ineqs: IntMat, eqs: IntMat, dim: int) -> tuple[IntMat, IntMat]:
    """Double description: V-side of ``{x : ineq.x >= 0, eq.x = 0}``.

    Inequalities are inserted in sorted order; minimality of the intermediate
    descriptions is maintained with the exact rank-based adjacency test, so
    the returned rays are precisely the extremal ones.
    """
    if eqs:
        lines = [list(row) for row in linalg.integer_kernel(linalg.transpose(eqs))]
    else:
        lines = [list(row) for row in linalg.identity_matrix(dim)]
    rays: list[IntVec] = []
    zsets: list[set[int]] = []
    processed: list[IntVec] = []

    for a in ineqs:
        idx = len(processed)
        processed.append(a)
        line_vals = [linalg.dot(a, l) for l in lines]
        if any(v != 0 for v in line_vals):
            pos = next(i for i, v in enumerate(line_vals) if v != 0)
            l0 = lines.pop(pos)
            v0 = line_vals.pop(pos)
            if v0 < 0:
                l0 = [-x for x in l0]
                v0 = -v0
            new_lines = []
            for l, v in zip(lines, line_vals):
                if v == 0:
                    new_lines.append(l)
                else:
                    new_lines.append(
                        list(linalg.primitive_part([v0 * x - v * y for x, y in zip(l, l0)]))
                    )
            lines = new_lines
            new_rays = []
            new_zsets = []
            for r, z in zip(rays, zsets):
                v = linalg.dot(a, r)
                if v == 0:
                    new_rays.append(r)
                else:
                    new_rays.append(
                        linalg.primitive_part([v0 * x - v * y for x, y in zip(r, l0)])
                    )
                # adjusted rays land in {a . x = 0}, so all become tight
                new_zsets.append(z | {idx})
            # the promoted line is tight on every earlier constraint, not this one
            new_rays.append(tuple(l0))
            new_zsets.append(set(range(idx)))
            rays = new_rays
            zsets = new_zsets
            continue

        vals = [linalg.dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            for z, v in zip(zsets, vals):
                if v == 0:
                    z.add(idx)
            continue
        pos_i = [i for i, v in enumerate(vals) if v > 0]
        neg_i = [i for i, v in enumerate(vals) if v < 0]
        zero_i = [i for i, v in enumerate(vals) if v == 0]
        target = dim - len(lines) - 2
        new_rays = [rays[i] for i in pos_i] + [rays[i] for i in zero_i]
        new_zsets = [set(zsets[i]) for i in pos_i] + [
            set(zsets[i]) | {idx} for i in zero_i
        ]
        for i in pos_i:
            for j in neg_i:
                common = zsets[i] & zsets[j]
                tight_rows = list(eqs) + [processed[t] for t in sorted(common)]
                if linalg.rank(tight_rows) != target:
                    continue
                vi, vj = vals[i], vals[j]
                w = linalg.primitive_part(
                    [vi * y - vj * x for x, y in zip(rays[i], rays[j])]
                )
                new_rays.append(w)
                new_zsets.append(common | {idx})
        rays = new_rays
        zsets = new_zsets
    return tuple(rays), tuple(tuple(l) for l in lines)


def _canonicalize(
    rays: IntMat, lines: IntMat
) -> tuple[IntMat, IntMat]:
    basis = _canonical_lattice_basis(lines)
    reduced = tuple(sorted(_reduce_mod_space(r, basis) for r in rays))
    return reduced, basis


def cone_from_constraints(
    normals: Sequence[Sequence[Scalar]],
    equations: Sequence[Sequence[Scalar]] = (),
    ambient_dim: Optional[int] = None,
) -> Cone:
    """Cone ``{x : n . x >= 0, e . x = 0}`` in canonical form."""
    if ambient_dim is None:
        for v in itertools.chain(normals, equations):
            ambient_dim = len(v)
            break
        else:
            raise ValueError("ambient_dim required for an empty description")
    ineqs = sorted(
        {
            linalg.primitive_rational(v)
            for v in normals
            if any(x != 0 for x in v)
        }
    )
    eqs = sorted(
        {
            linalg.primitive_rational(v)
            for v in equations
            if any(x != 0 for x in v)
        }
    )
    rays, lines = _ddm(tuple(ineqs), tuple(eqs), ambient_dim)
    facets, span_eqs = _ddm(tuple(sorted(rays)), lines, ambient_dim)
    rays, lines = _canonicalize(rays, lines)
    facets, span_eqs = _canonicalize(facets, span_eqs)
    return Cone(ambient_dim, rays, lines, facets, span_eqs)


def cone_from_generators(
    vectors: Sequence[Sequence[Scalar]], ambient_dim: Optional[int] = None
) -> Cone:
    """Conical hull of ``vectors`` in canonical form.

    Redundant generators are dropped; opposite generators become lineality.
    An empty input yields the zero cone.
    """
    if ambient_dim is None:
        for v in vectors:
            ambient_dim = len(v)
            break
        else:
            raise ValueError("ambient_dim required for an empty generator list")
    gens = sorted(
        {
            linalg.primitive_rational(v)
            for v in vectors
            if any(x != 0 for x in v)
        }
    )
    facets, span_eqs = _ddm(tuple(gens), (), ambient_dim)
    rays, lines = _ddm(tuple(sorted(facets)), span_eqs, ambient_dim)
    rays, lines = _canonicalize(rays, lines)
    facets, span_eqs = _canonicalize(facets, span_eqs)
    return Cone(ambient_dim, rays, lines, facets, span_eqs)
