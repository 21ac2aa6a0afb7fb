"""Simplicial lattice fans: validation, subdivision, walls, and quotients.

A fan is a primitive ray list plus maximal cones as index sets.  Only
simplicial fans are supported; non-simplicial input is rejected by
validation.  Fans are immutable and hashable, and the expensive checks are
cached per fan.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg
from .cones import Cone, cone_from_generators
from .linalg import IntMat, IntVec, Scalar

NON_PRIMITIVE_RAY = "non-primitive-ray"
DUPLICATE_RAY = "duplicate-ray"
NON_SIMPLICIAL_CONE = "non-simplicial-cone"
BAD_INTERSECTION = "bad-intersection"
ORPHAN_RAY = "orphan-ray"


class InvalidFanError(ValueError):
    """Raised when an operation's fan precondition fails."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        details = "; ".join(f"{v.kind}: {v.detail}" for v in report.violations)
        super().__init__(f"invalid fan: {details}")


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class Wall:
    """Shared codimension-one face of two maximal cones, with its relation.

    ``relation`` is an integer vector orthogonal to the ray matrix whose
    support lies in the wall rays plus the two opposite rays; the opposite
    rays carry coefficient +1 on smooth fans (positive coefficients, up to
    overall primitive scaling, on merely simplicial ones).
    """

    ray_indices: tuple[int, ...]
    left: int
    right: int
    relation: IntVec


@dataclass(frozen=True)
class ProjectionOverlap:
    """Witness that a lattice projection does not induce a quotient fan."""

    cone_a: tuple[int, ...]
    cone_b: tuple[int, ...]
    image_a: IntMat
    image_b: IntMat


@dataclass(frozen=True)
class Fan:
    """Fan of simplicial cones: primitive rays and maximal cones as index sets."""

    dim: int
    rays: IntMat
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(int(i) for i in c) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.dim < 1:
            raise ValueError("fan dimension must be at least 1")
        if not rays:
            raise ValueError("fan needs at least one ray")
        if any(len(r) != self.dim for r in rays):
            raise ValueError("ray coordinates must match the fan dimension")
        if not cones:
            raise ValueError("fan needs at least one maximal cone")
        for c in cones:
            if not c:
                raise ValueError("empty maximal cone")
            if any(i < 0 or i >= len(rays) for i in c):
                raise ValueError(f"cone index out of range: {c}")
            if any(a >= b for a, b in zip(c, c[1:])):
                raise ValueError(f"cone indices must be strictly increasing: {c}")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: Sequence[int]) -> IntMat:
        return tuple(self.rays[i] for i in cone)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _face_separator(fan: Fan, s: tuple[int, ...], t: tuple[int, ...]) -> bool:
    """True when cone(s) and cone(t) meet exactly along cone(s & t).

    Uses the separating functional characterization: the intersection is the
    common face iff some linear functional vanishes on the shared rays, is
    strictly positive on the remaining rays of one cone and strictly negative
    on those of the other.  Strictness is homogenized to >= 1.
    """
    shared = sorted(set(s) & set(t))
    only_s = sorted(set(s) - set(t))
    only_t = sorted(set(t) - set(s))
    eqs = [(fan.rays[i], 0) for i in shared]
    ineqs = [(fan.rays[i], 1) for i in only_s]
    ineqs += [(tuple(-x for x in fan.rays[j]), 1) for j in only_t]
    return linalg.feasible_point(ineqs, eqs, num_vars=fan.dim) is not None


@functools.lru_cache(maxsize=None)
def validate(fan: Fan) -> ValidationReport:
    """Check all fan invariants; the report lists every violation found."""
    violations: list[Violation] = []
    seen: dict[IntVec, int] = {}
    for idx, ray in enumerate(fan.rays):
        if all(x == 0 for x in ray):
            violations.append(Violation(NON_PRIMITIVE_RAY, f"ray {idx} is zero"))
            continue
        if linalg.primitive_part(ray) != ray:
            violations.append(
                Violation(NON_PRIMITIVE_RAY, f"ray {idx} = {ray} is not primitive")
            )
        if ray in seen:
            violations.append(
                Violation(DUPLICATE_RAY, f"rays {seen[ray]} and {idx} coincide")
            )
        else:
            seen[ray] = idx

    simplicial = []
    for ci, cone in enumerate(fan.max_cones):
        gens = fan.cone_rays(cone)
        if linalg.rank(gens) != len(cone):
            violations.append(
                Violation(
                    NON_SIMPLICIAL_CONE,
                    f"cone {ci} = {cone} has linearly dependent generators",
                )
            )
        else:
            simplicial.append(ci)

    used = set(itertools.chain.from_iterable(fan.max_cones))
    for idx in range(fan.n_rays):
        if idx not in used:
            violations.append(
                Violation(ORPHAN_RAY, f"ray {idx} appears in no maximal cone")
            )

    ok_so_far = not violations
    if ok_so_far:
        for ci, cj in itertools.combinations(range(len(fan.max_cones)), 2):
            s, t = fan.max_cones[ci], fan.max_cones[cj]
            if set(s) <= set(t) or set(t) <= set(s):
                violations.append(
                    Violation(
                        BAD_INTERSECTION,
                        f"cone {ci} and cone {cj} are nested or identical",
                    )
                )
                continue
            if not _face_separator(fan, s, t):
                violations.append(
                    Violation(
                        BAD_INTERSECTION,
                        f"cones {ci} and {cj} do not meet along a common face",
                    )
                )
    return ValidationReport(ok=not violations, violations=tuple(violations))


def ensure_valid(fan: Fan) -> None:
    report = validate(fan)
    if not report.ok:
        raise InvalidFanError(report)


@functools.lru_cache(maxsize=None)
def is_complete(fan: Fan) -> bool:
    """Support covers the whole space: pure n-dimensional and every facet of
    every maximal cone is shared by exactly two of them."""
    ensure_valid(fan)
    if any(len(c) != fan.dim for c in fan.max_cones):
        return False
    counts: dict[tuple[int, ...], int] = {}
    for cone in fan.max_cones:
        for facet in itertools.combinations(cone, fan.dim - 1):
            counts[facet] = counts.get(facet, 0) + 1
    return all(v == 2 for v in counts.values())


@functools.lru_cache(maxsize=None)
def is_smooth(fan: Fan) -> bool:
    """Every cone's generators extend to a lattice basis."""
    ensure_valid(fan)
    for cone in fan.max_cones:
        gens = fan.cone_rays(cone)
        if linalg.smith_normal_form(gens) != (1,) * len(cone):
            return False
    return True


# ---------------------------------------------------------------------------
# point location and star subdivision
# ---------------------------------------------------------------------------


def _barycentric(
    fan: Fan, cone: Sequence[int], x: Sequence[Scalar]
) -> Optional[tuple[Fraction, ...]]:
    """Coordinates of ``x`` in the (independent) generators of ``cone``."""
    cols = fan.cone_rays(cone)
    matrix = linalg.transpose(cols)
    sol = linalg.lin_solve(matrix, x)
    if sol is None:
        return None
    # lin_solve gives one solution; for independent generators it is unique,
    # but x must actually lie in the span
    recon = tuple(
        sum(sol[k] * cols[k][j] for k in range(len(cols))) for j in range(fan.dim)
    )
    if any(Fraction(a) != Fraction(b) for a, b in zip(recon, x)):
        return None
    return sol


def _locate(fan: Fan, x: Sequence[Scalar]) -> Optional[tuple[int, ...]]:
    if all(Fraction(v) == 0 for v in x):
        return ()
    for cone in fan.max_cones:
        coords = _barycentric(fan, cone, x)
        if coords is not None and all(c >= 0 for c in coords):
            return tuple(i for i, c in zip(cone, coords) if c > 0)
    return None


def minimal_cone_containing(fan: Fan, x: Sequence[Scalar]) -> tuple[int, ...]:
    """The unique cone whose relative interior contains ``x`` (complete fans)."""
    ensure_valid(fan)
    found = _locate(fan, x)
    if found is None:
        raise ValueError(f"point {tuple(x)} is outside the support of the fan")
    return found


def star_subdivision(fan: Fan, w: Sequence[int]) -> Fan:
    """Star subdivision (toric blow-up) at a primitive lattice point ``w``.

    ``w`` must lie in the relative interior of a cone of dimension >= 1 and
    not on an existing ray; every maximal cone containing that cone is
    replaced by its joins with ``w``.
    """
    ensure_valid(fan)
    w = tuple(int(x) for x in w)
    if all(x == 0 for x in w):
        raise ValueError("subdivision point must be nonzero")
    if linalg.primitive_part(w) != w:
        raise ValueError(f"subdivision point {w} is not primitive")
    if w in fan.rays:
        raise ValueError(f"subdivision point {w} is already a ray")
    sigma = _locate(fan, w)
    if sigma is None:
        raise ValueError(f"subdivision point {w} is outside the support of the fan")
    if len(sigma) == 1:
        # relative interior of a ray: only the primitive generator itself,
        # which was excluded above, so w is a non-primitive multiple
        raise ValueError(f"subdivision point {w} lies on the ray {sigma}")
    w_idx = fan.n_rays
    new_cones: list[tuple[int, ...]] = []
    for cone in fan.max_cones:
        if set(sigma) <= set(cone):
            for drop in sigma:
                new_cones.append(
                    tuple(sorted((set(cone) - {drop}) | {w_idx}))
                )
        else:
            new_cones.append(cone)
    return Fan(fan.dim, fan.rays + (w,), tuple(new_cones))


# ---------------------------------------------------------------------------
# walls
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def walls(fan: Fan) -> tuple[Wall, ...]:
    """All codimension-one walls with their curve relations.

    Requires a valid complete fan.  On smooth fans the relation is the exact
    integer relation with coefficient +1 on the two opposite rays; on
    simplicial non-smooth fans it is determined up to positive scaling and
    returned primitive.
    """
    ensure_valid(fan)
    if not is_complete(fan):
        raise ValueError("walls are defined for complete fans only")
    smooth = is_smooth(fan)
    by_facet: dict[tuple[int, ...], list[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        for facet in itertools.combinations(cone, fan.dim - 1):
            by_facet.setdefault(facet, []).append(ci)
    result = []
    for facet in sorted(by_facet):
        owners = by_facet[facet]
        assert len(owners) == 2, "completeness guarantees two cones per facet"
        left, right = sorted(owners)
        (i,) = set(fan.max_cones[left]) - set(facet)
        (j,) = set(fan.max_cones[right]) - set(facet)
        ordering = (i, j) + facet
        rows = tuple(fan.rays[k] for k in ordering)
        kernel = linalg.integer_kernel(rows)
        assert len(kernel) == 1, "wall rays span a hyperplane"
        rel = kernel[0]
        if rel[0] < 0:
            rel = tuple(-x for x in rel)
        if rel[0] <= 0 or rel[1] <= 0:
            raise ValueError(
                f"facet {facet} is not a wall: adjacent cones lie on one side"
            )
        if smooth and (rel[0] != 1 or rel[1] != 1):
            raise AssertionError("smooth wall relation must have unit coefficients")
        full = [0] * fan.n_rays
        for coef, k in zip(rel, ordering):
            full[k] = coef
        result.append(Wall(facet, left, right, tuple(full)))
    return tuple(result)


# ---------------------------------------------------------------------------
# star quotients and projections
# ---------------------------------------------------------------------------


def star_quotient_fan(fan: Fan, sigma: Sequence[int]) -> Fan:
    """Fan of the closed invariant subvariety attached to the cone ``sigma``:
    cones containing it, projected to the quotient lattice."""
    ensure_valid(fan)
    sigma = tuple(sorted(int(i) for i in sigma))
    if not sigma:
        return fan
    if not any(set(sigma) <= set(c) for c in fan.max_cones):
        raise ValueError(f"{sigma} is not a cone of the fan")
    gens = fan.cone_rays(sigma)
    proj_rows = linalg.integer_kernel(linalg.transpose(gens))
    if len(proj_rows) != fan.dim - len(sigma):
        raise ValueError("quotient projection has unexpected rank")

    def project(v: IntVec) -> IntVec:
        return tuple(linalg.dot(row, v) for row in proj_rows)

    star = [c for c in fan.max_cones if set(sigma) <= set(c)]
    ray_map: dict[int, int] = {}
    new_rays: list[IntVec] = []
    image_index: dict[IntVec, int] = {}
    for idx in sorted(set(itertools.chain.from_iterable(star)) - set(sigma)):
        image = linalg.primitive_part(project(fan.rays[idx]))
        if image not in image_index:
            image_index[image] = len(new_rays)
            new_rays.append(image)
        ray_map[idx] = image_index[image]
    new_cones = []
    for c in star:
        mapped = tuple(sorted({ray_map[i] for i in c if i not in set(sigma)}))
        new_cones.append(mapped)
    new_cones = list(dict.fromkeys(new_cones))
    return Fan(fan.dim - len(sigma), tuple(new_rays), tuple(new_cones))


def project_fan(
    fan: Fan, projection: Sequence[Sequence[int]]
) -> Union[Fan, ProjectionOverlap]:
    """Push the fan through a surjective lattice projection.

    Returns the quotient fan when the cone images fit together into one;
    otherwise returns a certificate naming two maximal cones whose images
    overlap in a full-dimensional set.
    """
    ensure_valid(fan)
    pi = linalg.as_int_matrix(projection)
    d = len(pi)
    if any(len(row) != fan.dim for row in pi):
        raise ValueError(
            f"projection rows must have {fan.dim} entries (the fan dimension)"
        )
    if d == 0 or d > fan.dim:
        raise ValueError("projection must map onto a lower-or-equal dimension")
    if linalg.smith_normal_form(pi) != (1,) * d:
        raise ValueError("projection is not a surjective lattice map")

    def image_of(cone: Sequence[int]) -> Cone:
        gens = [
            tuple(linalg.dot(row, fan.rays[i]) for row in pi) for i in cone
        ]
        return cone_from_generators(gens, ambient_dim=d)

    images: list[Cone] = []
    first_source: dict[Cone, tuple[int, ...]] = {}
    for cone in fan.max_cones:
        img = image_of(cone)
        if img not in first_source:
            first_source[img] = cone
            images.append(img)

    for ca, cb in itertools.combinations(images, 2):
        if ca.intersect(cb).dim() == d:
            return ProjectionOverlap(
                cone_a=first_source[ca],
                cone_b=first_source[cb],
                image_a=ca.generators,
                image_b=cb.generators,
            )
    for img in images:
        if not img.is_pointed:
            if len(images) == 1 and len(fan.max_cones) > 1:
                # every source cone shares the one non-pointed image
                return ProjectionOverlap(
                    cone_a=fan.max_cones[0],
                    cone_b=fan.max_cones[1],
                    image_a=img.generators,
                    image_b=img.generators,
                )
            raise ValueError("a projected cone contains a line; no quotient fan")
    for ca, cb in itertools.combinations(images, 2):
        meet = ca.intersect(cb)
        if not (meet.is_face_of(ca) and meet.is_face_of(cb)):
            raise ValueError(
                "cone images do not form a fan (lower-dimensional bad intersection)"
            )
    for img in images:
        if len(img.rays) != img.dim():
            raise ValueError("quotient fan is not simplicial; unsupported")

    all_rays = sorted({r for img in images for r in img.rays})
    index = {r: i for i, r in enumerate(all_rays)}
    cones = sorted(tuple(sorted(index[r] for r in img.rays)) for img in images)
    quotient = Fan(d, tuple(all_rays), tuple(cones))
    ensure_valid(quotient)
    return quotient


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def fan_to_dict(fan: Fan) -> dict:
    return {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def fan_to_json(fan: Fan) -> str:
    return json.dumps(fan_to_dict(fan), separators=(", ", ": ")) + "\n"


def fan_from_dict(data: dict) -> Fan:
    if not isinstance(data, dict):
        raise ValueError("fan JSON must be an object")
    missing = {"dim", "rays", "max_cones"} - set(data)
    if missing:
        raise ValueError(f"fan JSON is missing keys: {sorted(missing)}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ValueError("fan dim must be an integer")
    rays = data["rays"]
    cones = data["max_cones"]
    if not isinstance(rays, list) or not all(isinstance(r, list) for r in rays):
        raise ValueError("rays must be a list of integer vectors")
    for r in rays:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ValueError(f"non-integer ray entry in {r}")
    if not isinstance(cones, list) or not all(isinstance(c, list) for c in cones):
        raise ValueError("max_cones must be a list of index lists")
    for c in cones:
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in c):
            raise ValueError(f"non-integer cone index in {c}")
        if any(a >= b for a, b in zip(c, c[1:])):
            raise ValueError(f"cone indices must be sorted ascending: {c}")
    return Fan(dim, tuple(tuple(r) for r in rays), tuple(tuple(c) for c in cones))


def fan_from_json(text: str) -> Fan:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed fan JSON: {exc}") from exc
    return fan_from_dict(data)
