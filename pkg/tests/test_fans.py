from fractions import Fraction

import pytest

from nefbig import linalg
from nefbig.catalog import (
    blowup_chain,
    miyake_oda,
    product_fan,
    projective_space,
    threefold_8_10,
)
from nefbig.cones import cone_from_generators
from nefbig import fans
from nefbig.fans import (
    BAD_INTERSECTION,
    Fan,
    NON_PRIMITIVE_RAY,
    NON_SIMPLICIAL_CONE,
    ORPHAN_RAY,
    ProjectionOverlap,
)

from oracles import simplicial_cone_measure


def kinds(report):
    return {v.kind for v in report.violations}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def test_p3_and_miyake_oda_valid():
    assert fans.validate(projective_space(3)).ok
    assert fans.validate(miyake_oda()).ok


def test_duplicated_cone_invalid():
    f = projective_space(3)
    bad = Fan(3, f.rays, f.max_cones + (f.max_cones[0],))
    report = fans.validate(bad)
    assert not report.ok
    assert kinds(report) == {BAD_INTERSECTION}


def test_non_primitive_ray_detected():
    bad = Fan(2, ((2, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
    assert NON_PRIMITIVE_RAY in kinds(fans.validate(bad))


def test_orphan_ray_detected():
    bad = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1),))
    assert ORPHAN_RAY in kinds(fans.validate(bad))


def test_non_simplicial_cone_detected():
    bad = Fan(2, ((1, 0), (-1, 0), (0, 1)), ((0, 1, 2),))
    assert NON_SIMPLICIAL_CONE in kinds(fans.validate(bad))


def test_overlapping_cones_detected():
    # two quadrants sharing interior: <e1, e2> and <e1+2e2, e1+e2>
    bad = Fan(2, ((1, 0), (0, 1), (1, 2), (1, 1)), ((0, 1), (2, 3)))
    report = fans.validate(bad)
    assert not report.ok
    assert BAD_INTERSECTION in kinds(report)


# ---------------------------------------------------------------------------
# completeness / smoothness
# ---------------------------------------------------------------------------


def test_completeness():
    assert fans.is_complete(projective_space(1))
    assert fans.is_complete(projective_space(4))
    orthant = Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((0, 1, 2),))
    assert not fans.is_complete(orthant)
    chain = threefold_8_10()
    assert fans.is_complete(chain)
    assert len(chain.max_cones) == 2 * (chain.n_rays - 2)


def test_smoothness():
    assert fans.is_smooth(projective_space(3))
    assert fans.is_smooth(threefold_8_10())
    singular = Fan(2, ((1, 0), (1, 2)), ((0, 1),))
    assert not fans.is_smooth(singular)


# ---------------------------------------------------------------------------
# star subdivision
# ---------------------------------------------------------------------------


def test_subdivision_of_p3_at_v5():
    f = fans.star_subdivision(projective_space(3), (1, -1, -2))
    assert f.n_rays == 5
    assert len(f.max_cones) == 6
    assert fans.validate(f).ok
    assert fans.is_complete(f)


def test_subdivision_chain_8_10():
    f = threefold_8_10()
    assert f.n_rays == 8
    assert len(f.max_cones) == 12
    assert fans.is_smooth(f)
    assert fans.is_complete(f)
    assert f.rays[4] == (1, -1, -2)
    assert f.rays[6] == (0, -1, -2)
    assert f.rays[7] == (0, 0, -1)


def test_subdivision_rejections():
    f = projective_space(3)
    with pytest.raises(ValueError):
        fans.star_subdivision(f, (1, 0, 0))  # existing ray
    with pytest.raises(ValueError):
        fans.star_subdivision(f, (2, 2, 2))  # not primitive
    with pytest.raises(ValueError):
        fans.star_subdivision(f, (2, 0, 0))  # non-primitive multiple of a ray
    orthant = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    with pytest.raises(ValueError):
        fans.star_subdivision(orthant, (-1, -1))  # outside the support


def test_subdivision_preserves_support_measure():
    # single smooth cone subdivided at the sum of its generators
    gens = ((1, 0, 0), (1, 1, 0), (1, 1, 1))
    fan = Fan(3, gens, ((0, 1, 2),))
    sub = fans.star_subdivision(fan, (3, 2, 1))
    assert sub.n_rays == fan.n_rays + 1
    assert fans.validate(sub).ok
    # functional equal to 1 on each original generator
    dual = linalg.lin_solve(gens, (1, 1, 1))
    total = sum(
        simplicial_cone_measure(sub.cone_rays(c), dual) for c in sub.max_cones
    )
    assert total == simplicial_cone_measure(gens, dual)


def test_subdivision_at_generator_sum_preserves_smoothness():
    fan = projective_space(3)
    for cone in (fan.max_cones[0],):
        center = tuple(
            sum(fan.rays[i][j] for i in cone) for j in range(3)
        )
        sub = fans.star_subdivision(fan, center)
        assert fans.is_smooth(sub)


# ---------------------------------------------------------------------------
# walls
# ---------------------------------------------------------------------------


def test_p3_walls():
    ws = fans.walls(projective_space(3))
    assert len(ws) == 6
    for w in ws:
        assert sorted(w.relation) == [0, 0, 0, 0, 1, 1, 1, 1][4:]
        assert sum(w.relation) == 4


def test_8_10_walls_orthogonal():
    fan = threefold_8_10()
    ws = fans.walls(fan)
    assert len(ws) == 3 * fan.n_rays - 6
    cols = list(zip(*fan.rays))
    for w in ws:
        assert all(linalg.dot(w.relation, col) == 0 for col in cols)
        i = set(fan.max_cones[w.left]) - set(w.ray_indices)
        j = set(fan.max_cones[w.right]) - set(w.ray_indices)
        assert w.relation[i.pop()] == 1 and w.relation[j.pop()] == 1


def test_walls_deterministic_order():
    fan = threefold_8_10()
    ws = fans.walls(fan)
    assert [w.ray_indices for w in ws] == sorted(w.ray_indices for w in ws)


def test_walls_scaled_relation_on_singular_fan():
    # complete simplicial fan with one singular cone (det -2)
    fan = Fan(2, ((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (0, 2)))
    assert fans.validate(fan).ok
    assert fans.is_complete(fan)
    assert not fans.is_smooth(fan)
    ws = fans.walls(fan)
    cols = list(zip(*fan.rays))
    for w in ws:
        assert all(linalg.dot(w.relation, col) == 0 for col in cols)
        assert linalg.primitive_part(w.relation) == w.relation
        i = (set(fan.max_cones[w.left]) - set(w.ray_indices)).pop()
        j = (set(fan.max_cones[w.right]) - set(w.ray_indices)).pop()
        assert w.relation[i] > 0 and w.relation[j] > 0
        support = {t for t, c in enumerate(w.relation) if c != 0}
        assert support <= set(w.ray_indices) | {i, j}


def test_walls_reject_incomplete():
    orthant = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    with pytest.raises(ValueError):
        fans.walls(orthant)


# ---------------------------------------------------------------------------
# point location, star quotients, projections
# ---------------------------------------------------------------------------


def test_minimal_cone_containing():
    fan = threefold_8_10()
    assert fans.minimal_cone_containing(fan, (0, 0, 0)) == ()
    # v2 + v7 = (0, 0, -2) sits on the ray of v8
    assert fans.minimal_cone_containing(fan, (0, 0, -2)) == (7,)
    p3 = projective_space(3)
    total = tuple(sum(col) for col in zip(*p3.rays))
    assert total == (0, 0, 0)
    assert fans.minimal_cone_containing(p3, total) == ()


def test_star_quotient_zero_cone_is_identity():
    fan = projective_space(3)
    assert fans.star_quotient_fan(fan, ()) == fan


def test_star_quotient_p3_ray_is_p2():
    q = fans.star_quotient_fan(projective_space(3), (0,))
    expected = projective_space(2)
    assert q.dim == 2
    assert sorted(q.rays) == sorted(expected.rays)
    assert sorted(frozenset(c) for c in q.max_cones) == sorted(
        frozenset(c) for c in expected.max_cones
    )


def test_star_quotient_product_ray_is_p1():
    p1p1 = product_fan(projective_space(1), projective_space(1))
    q = fans.star_quotient_fan(p1p1, (0,))
    assert q.dim == 1
    assert sorted(q.rays) == [(-1,), (1,)]


def test_star_quotient_rejects_non_cone():
    with pytest.raises(ValueError):
        fans.star_quotient_fan(miyake_oda(), (0, 3))  # v1, v4 share no cone


def test_project_8_10_xy_gives_overlap():
    fan = threefold_8_10()
    result = fans.project_fan(fan, ((1, 0, 0), (0, 1, 0)))
    assert isinstance(result, ProjectionOverlap)
    ca = cone_from_generators(result.image_a)
    cb = cone_from_generators(result.image_b)
    assert ca.intersect(cb).dim() == 2
    # the images named in the construction: <v2,v5,v8> and <v1,v4,v5>
    def image(cone_idx):
        return cone_from_generators(
            [(fan.rays[i][0], fan.rays[i][1]) for i in cone_idx]
        )

    assert image((1, 4, 7)) == cone_from_generators([(0, 1), (1, -1)])
    assert image((0, 3, 4)) == cone_from_generators([(1, 0), (-1, -1)])
    assert image((1, 4, 7)).intersect(image((0, 3, 4))).dim() == 2


def test_project_8_10_z_gives_overlap():
    assert isinstance(
        fans.project_fan(threefold_8_10(), ((0, 0, 1),)), ProjectionOverlap
    )


def test_project_product_to_factor():
    p1p1 = product_fan(projective_space(1), projective_space(1))
    q = fans.project_fan(p1p1, ((1, 0),))
    assert isinstance(q, Fan)
    assert q.dim == 1 and sorted(q.rays) == [(-1,), (1,)]


def test_project_blown_up_plane_ruling():
    from nefbig.catalog import blown_up_p2

    fan = blown_up_p2()
    # collapsing the exceptional direction gives the line
    q = fans.project_fan(fan, ((1, -1),))
    assert isinstance(q, Fan)
    assert sorted(q.rays) == [(-1,), (1,)]
    # the transverse projection admits no morphism
    assert isinstance(fans.project_fan(fan, ((1, 0),)), ProjectionOverlap)


def test_project_rejects_non_surjective():
    with pytest.raises(ValueError):
        fans.project_fan(projective_space(3), ((2, 0, 0),))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def test_json_round_trip_byte_identical():
    for fan in (projective_space(3), threefold_8_10(), miyake_oda(), blowup_chain(4)):
        text = fans.fan_to_json(fan)
        again = fans.fan_to_json(fans.fan_from_json(text))
        assert again == text


@pytest.mark.parametrize(
    "payload",
    [
        '{"dim": 2, "rays": [[1, 0]]}',
        '{"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[1, 0]]}',
        '{"dim": 2, "rays": [[1, 0.5], [0, 1]], "max_cones": [[0, 1]]}',
        '{"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 0]]}',
        '{"dim": true, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 1]]}',
        "[1, 2, 3]",
        "not json",
    ],
)
def test_json_loader_rejects_malformed(payload):
    with pytest.raises(ValueError):
        fans.fan_from_json(payload)


def test_fan_structural_errors():
    with pytest.raises(ValueError):
        Fan(2, ((1, 0),), ((0, 1),))  # index out of range
    with pytest.raises(ValueError):
        Fan(2, ((1, 0), (0, 1)), ())  # no cones
    with pytest.raises(ValueError):
        Fan(0, ((),), ((0,),))  # dimension zero
