import itertools

import pytest

from nefbig import batyrev, catalog, divisors, fans, linalg


def test_projective_space_builder():
    p1 = catalog.projective_space(1)
    assert p1.rays == ((1,), (-1,)) and len(p1.max_cones) == 2
    p3 = catalog.projective_space(3)
    assert p3.n_rays == 4 and len(p3.max_cones) == 4
    for n in (1, 2, 3, 5):
        fan = catalog.projective_space(n)
        assert fans.validate(fan).ok
        assert fans.is_smooth(fan) and fans.is_complete(fan)
    with pytest.raises(ValueError):
        catalog.projective_space(0)


def test_threefold_8_10_construction():
    fan = catalog.threefold_8_10()
    assert fan.n_rays == 8
    assert len(fan.max_cones) == 12
    assert fan.rays[4] == (1, -1, -2)
    assert fan.rays[5] == (1, 0, -1)
    assert fan.rays[6] == (0, -1, -2)
    assert fan.rays[7] == (0, 0, -1)
    assert fans.is_smooth(fan) and fans.is_complete(fan)
    assert divisors.is_projective(fan)
    assert divisors.class_space(fan).picard_rank == 5
    # cones used by the projection argument
    assert (1, 4, 7) in fan.max_cones  # <v2, v5, v8>
    assert (0, 3, 4) in fan.max_cones  # <v1, v4, v5>


def test_tower_threefolds():
    for k in (6, 7, 8):
        fan = catalog.tower_threefold(k)
        assert divisors.class_space(fan).picard_rank == k
        assert fans.is_smooth(fan)
        assert fans.is_complete(fan)
    with pytest.raises(ValueError):
        catalog.tower_threefold(5)


def test_tower_blowup_centers_follow_recurrence():
    x6 = catalog.tower_threefold(6)
    assert x6.rays[8] == (1, -2, -5)  # v5 + v7 + v8
    x7 = catalog.tower_threefold(7)
    assert x7.rays[9] == (2, -4, -9)  # v5 + v7 + u6
    # each tower extends the previous one
    assert x7.rays[:9] == x6.rays


def test_miyake_oda_verbatim():
    fan = catalog.miyake_oda()
    assert fan.n_rays == 7
    assert len(fan.max_cones) == 10
    assert fan.rays[0] == (1, 0, 0)
    assert fan.rays[6] == (-1, -1, 0)
    assert fans.validate(fan).ok
    assert fans.is_smooth(fan) and fans.is_complete(fan)
    assert not divisors.is_projective(fan)
    assert divisors.class_space(fan).picard_rank == 4


def test_blowup_chain_ndim():
    for n in (4, 5):
        fan = catalog.blowup_chain(n)
        assert fan.n_rays == n + 5
        assert divisors.class_space(fan).picard_rank == 5
        assert fans.is_smooth(fan)
        assert divisors.is_projective(fan)
        # v3 + w_1 + ... + w_{n-3} + v8 = 0 exactly
        idx = [2] + list(range(3, n)) + [n + 4]
        total = tuple(sum(fan.rays[i][j] for i in idx) for j in range(n))
        assert all(x == 0 for x in total)
    with pytest.raises(ValueError):
        catalog.blowup_chain(2)


def test_product_fan():
    p1 = catalog.projective_space(1)
    p2 = catalog.projective_space(2)
    p1p1 = catalog.product_fan(p1, p1)
    assert p1p1.n_rays == 4 and len(p1p1.max_cones) == 4
    p1p2 = catalog.product_fan(p1, p2)
    assert p1p2.n_rays == 5 and len(p1p2.max_cones) == 6
    assert fans.validate(p1p2).ok and fans.is_smooth(p1p2)
    # Picard ranks add
    assert (
        divisors.class_space(p1p2).picard_rank
        == divisors.class_space(p1).picard_rank + divisors.class_space(p2).picard_rank
    )
    assert divisors.nef_equals_pe(p1p2)


def unimodular_fan_equivalence(f1, f2):
    """Search a lattice automorphism carrying one fan onto the other."""
    if f1.dim != f2.dim or f1.n_rays != f2.n_rays:
        return False
    basis = f1.rays[: f1.dim]
    if abs(linalg.det(basis)) == 0:
        return False
    cones1 = {frozenset(c) for c in f1.max_cones}
    for image in itertools.permutations(range(f2.n_rays), f1.dim):
        target = [f2.rays[i] for i in image]
        # solve row-wise: each coordinate functional of U pulls back basis -> target
        u_rows = []
        ok = True
        for coord in range(f1.dim):
            rhs = tuple(t[coord] for t in target)
            row = linalg.lin_solve(basis, rhs)
            if row is None or any(x.denominator != 1 for x in row):
                ok = False
                break
            u_rows.append(tuple(int(x) for x in row))
        if not ok:
            continue
        if abs(linalg.det(u_rows)) != 1:
            continue
        mapped = {}
        for idx, ray in enumerate(f1.rays):
            img = tuple(linalg.dot(r, ray) for r in u_rows)
            if img not in f2.rays:
                break
            mapped[idx] = f2.rays.index(img)
        else:
            if len(set(mapped.values())) != f1.n_rays:
                continue
            cones_mapped = {
                frozenset(mapped[i] for i in c) for c in f1.max_cones
            }
            if cones_mapped == {frozenset(c) for c in f2.max_cones}:
                return True
    return False


def test_split_bundle_hirzebruch_equivalence():
    built = catalog.hirzebruch(1)
    standard = fans.Fan(
        2, ((1, 0), (0, 1), (-1, 1), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3))
    )
    assert fans.validate(built).ok and fans.is_smooth(built)
    assert unimodular_fan_equivalence(built, standard)


def test_split_bundle_trivial_twist_is_product():
    p1 = catalog.projective_space(1)
    bundle = catalog.projectivized_split_bundle(p1, (0, 0), 1)
    product = catalog.product_fan(p1, p1)
    assert sorted(bundle.rays) == sorted(product.rays)
    assert {frozenset(bundle.rays[i] for i in c) for c in bundle.max_cones} == {
        frozenset(product.rays[i] for i in c) for c in product.max_cones
    }


def test_split_bundle_dimensions():
    p2 = catalog.projective_space(2)
    bundle = catalog.projectivized_split_bundle(p2, (1, 0, 0), 2)
    assert bundle.dim == 4
    assert bundle.n_rays == p2.n_rays + 3
    assert fans.validate(bundle).ok
    assert fans.is_smooth(bundle) and fans.is_complete(bundle)
    assert divisors.class_space(bundle).picard_rank == 2


def test_blown_up_p2():
    fan = catalog.blown_up_p2()
    assert divisors.class_space(fan).picard_rank == 2
    assert fans.is_smooth(fan)
    assert divisors.has_nontrivial_nonbig_nef(fan) is not None


def test_catalog_fans_all_valid(catalog_fans):
    expectations = {
        # name: (smooth, complete, projective)
        "p1": (True, True, True),
        "p2": (True, True, True),
        "p3": (True, True, True),
        "p1xp1": (True, True, True),
        "p1xp2": (True, True, True),
        "blown-up-p2": (True, True, True),
        "hirzebruch-1": (True, True, True),
        "example-8-10": (True, True, True),
        "xk-6": (True, True, True),
        "xk-7": (True, True, True),
        "xk-8": (True, True, True),
        "ndim-8-10-4": (True, True, True),
        "miyake-oda": (True, True, False),
    }
    assert set(catalog_fans) == set(expectations)
    for name, fan in catalog_fans.items():
        smooth, complete, projective = expectations[name]
        assert fans.validate(fan).ok, name
        assert fans.is_smooth(fan) == smooth, name
        assert fans.is_complete(fan) == complete, name
        assert divisors.is_projective(fan) == projective, name


def test_zero_focus_exists_for_smooth_projective(catalog_fans, smooth_projective_names):
    for name in smooth_projective_names:
        assert batyrev.zero_focus_collection(catalog_fans[name]) is not None, name
