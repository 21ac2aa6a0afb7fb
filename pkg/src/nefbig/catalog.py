"""Builders for the standard fans the library is tested against.

Each fan is constructed by its recipe (chains of star subdivisions, products,
bundle fans) rather than hard-coded cone lists, except for the Miyake-Oda
fan, which is only known as an explicit list.
"""

from __future__ import annotations

import functools
import itertools

from . import linalg
from .fans import Fan, star_subdivision
from .linalg import IntVec


@functools.lru_cache(maxsize=None)
def projective_space(n: int) -> Fan:
    """Standard fan of n-dimensional projective space."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    rays = list(linalg.identity_matrix(n)) + [tuple([-1] * n)]
    cones = tuple(
        tuple(sorted(set(range(n + 1)) - {i})) for i in range(n + 1)
    )
    return Fan(n, tuple(rays), cones)


def _chain_centers(n: int) -> tuple[IntVec, ...]:
    """Subdivision centers for the blow-up chain over n-space, n >= 3."""
    pad = [-2] * (n - 2)
    pad1 = [-1] * (n - 2)
    return (
        tuple([1, -1] + pad),   # 3 v1 + v2 + 2 v4
        tuple([1, 0] + pad1),   # (v1 + v2 + v5) / 2
        tuple([0, -1] + pad),   # (v2 + 2 v4 + 2 v5) / 3
        tuple([0, 0] + pad1),   # (v2 + v7) / 2
    )


@functools.lru_cache(maxsize=None)
def blowup_chain(n: int) -> Fan:
    """Four-step blow-up chain over n-dimensional projective space.

    For n = 3 this is the threefold labeled [8-10] in Oda's classification of
    smooth projective toric threefolds; higher n generalizes the same chain
    with (n-3)-dimensional blow-up centers.  The result is smooth, projective
    and has Picard rank 5.
    """
    if n < 3:
        raise ValueError("the blow-up chain needs dimension at least 3")
    fan = projective_space(n)
    for center in _chain_centers(n):
        fan = star_subdivision(fan, center)
    return fan


def threefold_8_10() -> Fan:
    """The threefold [8-10]: 8 rays, 12 maximal cones, Picard rank 5."""
    return blowup_chain(3)


@functools.lru_cache(maxsize=None)
def tower_threefold(k: int) -> Fan:
    """Iterated blow-ups of the [8-10] threefold inside one fixed cone.

    Picard rank k for any k >= 6; every step subdivides at the sum of the
    current cone's generators, which preserves smoothness.
    """
    if k < 6:
        raise ValueError("the tower starts at Picard rank 6")
    fan = threefold_8_10()
    v5, v7 = (1, -1, -2), (0, -1, -2)
    u = (0, 0, -1)
    for _ in range(k - 5):
        u = tuple(a + b + c for a, b, c in zip(v5, v7, u))
        fan = star_subdivision(fan, u)
    return fan


@functools.lru_cache(maxsize=None)
def miyake_oda() -> Fan:
    """The classical smooth complete non-projective threefold of Miyake-Oda."""
    rays = (
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (-1, -1, -1),
        (0, -1, -1),
        (-1, 0, -1),
        (-1, -1, 0),
    )
    cones = (
        (0, 1, 2),
        (3, 4, 5),
        (3, 5, 6),
        (3, 4, 6),
        (0, 1, 4),
        (1, 4, 5),
        (1, 2, 5),
        (2, 5, 6),
        (0, 2, 6),
        (0, 4, 6),
    )
    return Fan(3, rays, cones)


def product_fan(f1: Fan, f2: Fan) -> Fan:
    """Fan of the product variety on the direct-sum lattice."""
    n1, n2 = f1.dim, f2.dim
    rays = [r + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + r for r in f2.rays]
    shift = f1.n_rays
    cones = tuple(
        tuple(sorted(c1 + tuple(i + shift for i in c2)))
        for c1, c2 in itertools.product(f1.max_cones, f2.max_cones)
    )
    return Fan(n1 + n2, tuple(rays), cones)


def projectivized_split_bundle(base: Fan, twist, k: int) -> Fan:
    """Fan of the projectivized sum of ``k`` trivial line bundles and one
    twist bundle over ``base``.

    ``twist`` gives the ray coefficients of a divisor representing the twist
    bundle.  Convention (pinned by the Hirzebruch test): base ray ``v`` with
    coefficient ``c`` lifts to ``(v, c, ..., c)``, the fiber gets the rays of
    projective k-space with the twisted summand on the negative-sum ray.
    """
    if k < 1:
        raise ValueError("fiber dimension must be at least 1")
    twist = tuple(int(c) for c in twist)
    if len(twist) != base.n_rays:
        raise ValueError("twist coefficients must match the ray count")
    n = base.dim
    lifted = [r + (c,) * k for r, c in zip(base.rays, twist)]
    fiber = [(0,) * n + e for e in linalg.identity_matrix(k)]
    fiber.append((0,) * n + tuple([-1] * k))
    rays = tuple(lifted + fiber)
    m = base.n_rays
    cones = []
    for c_base in base.max_cones:
        for drop in range(k + 1):
            fiber_part = tuple(m + i for i in range(k + 1) if i != drop)
            cones.append(tuple(sorted(c_base + fiber_part)))
    return Fan(n + k, rays, tuple(cones))


@functools.lru_cache(maxsize=None)
def blown_up_p2() -> Fan:
    """Projective plane blown up at an invariant point."""
    return star_subdivision(projective_space(2), (1, 1))


@functools.lru_cache(maxsize=None)
def hirzebruch(a: int) -> Fan:
    """Projectivized split bundle of twist degree ``a`` over the line."""
    twist = tuple([a] + [0] * 1)
    return projectivized_split_bundle(projective_space(1), twist, 1)


@functools.lru_cache(maxsize=None)
def standard_fans() -> dict[str, Fan]:
    """The named fans the test suite quantifies over."""
    fans = {
        "p1": projective_space(1),
        "p2": projective_space(2),
        "p3": projective_space(3),
        "p1xp1": product_fan(projective_space(1), projective_space(1)),
        "p1xp2": product_fan(projective_space(1), projective_space(2)),
        "blown-up-p2": blown_up_p2(),
        "hirzebruch-1": hirzebruch(1),
        "example-8-10": threefold_8_10(),
        "xk-6": tower_threefold(6),
        "xk-7": tower_threefold(7),
        "xk-8": tower_threefold(8),
        "ndim-8-10-4": blowup_chain(4),
        "miyake-oda": miyake_oda(),
    }
    return fans
