import random

import pytest

from sympjoint.exact import ExactMatrix, Rat, rat, random_symplectic
from sympjoint.invariants import GenericityError, PointConfig, gram, random_config
from sympjoint.poly import MultiPoly, aux_var, contact_var
from sympjoint.variants import (
    ContactConfig,
    ContactPoint,
    asp_invariants,
    contact_absolute,
    contact_apply,
    contact_config_from_dict,
    contact_config_to_dict,
    contact_equivalent,
    contact_lift_symplectic,
    contact_relative,
    contact_transform,
    csp_signature,
    dim_bbar,
)


def random_gl2(rng):
    while True:
        m = ExactMatrix([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        if m.data[0][0] * m.data[1][1] - m.data[0][1] * m.data[1][0] != 0:
            return m


def random_contact(n, m, rng):
    pts = tuple(
        ContactPoint(
            tuple(rng.randint(-5, 5) for _ in range(n)),
            tuple(rng.randint(-5, 5) for _ in range(n)),
            rng.randint(-5, 5),
        )
        for _ in range(m)
    )
    return ContactConfig(n, pts)


# --- conformal and affine ----------------------------------------------------


def test_csp_signature_ratios():
    g = gram(PointConfig(1, ((1, 0), (0, 2), (-3, 3))))
    sig = csp_signature(g, 1)
    assert sig.values[0] == 1  # sign of a12 = 2
    assert len(sig.values) - 1 == 2  # d(3,1) - 1 ratios
    assert sig.values[1] == g.value(1, 3) / g.value(1, 2)
    a12, a13 = Rat(2), Rat(6)
    g2 = gram(PointConfig(1, ((1, 0), (0, a12), (-a13 / a12, a13))))
    assert g2.value(1, 2) == 2 and g2.value(1, 3) == 6
    assert csp_signature(g2, 1).values[1] == 3


def test_csp_scaling_invariance():
    rng = random.Random(70)
    cfg = random_config(2, 5, rng)
    g = gram(cfg)
    if g.value(1, 2) == 0:
        pytest.skip("degenerate draw")
    assert csp_signature(g, 2) == csp_signature(gram(cfg.scale(3)), 2)
    # a12 sign is part of the signature: the conformal factor is positive
    assert csp_signature(g, 2).values[0] == (1 if g.value(1, 2) > 0 else -1)


def test_csp_requires_nonzero_a12():
    g = gram(PointConfig(1, ((1, 0), (2, 0))))
    with pytest.raises(GenericityError):
        csp_signature(g, 1)


def test_asp_translation_and_symplectic_invariance():
    rng = random.Random(71)
    cfg = random_config(1, 4, rng)
    vals = asp_invariants(cfg)
    assert len(vals) == 3  # triples (1,j,k): d(3,1) of the translated config
    shifted = cfg.translate((7, -2))
    assert asp_invariants(shifted) == vals
    moved = cfg.transform(random_symplectic(1, 10, seed=1))
    assert asp_invariants(moved) == vals


def test_asp_collinear_triangle_vanishes():
    cfg = PointConfig(1, ((0, 0), (1, 1), (2, 2)))
    assert asp_invariants(cfg) == [Rat(0)]
    with pytest.raises(ValueError):
        asp_invariants(PointConfig(1, ((0, 0), (1, 1))))


# --- contact action ----------------------------------------------------------


def test_contact_apply_identity():
    p = ContactPoint((2,), (3,), rat(5, 2))
    assert contact_apply(ExactMatrix.identity(2), p) == p


def test_contact_apply_composition():
    rng = random.Random(72)
    for _ in range(10):
        g1, g2 = random_gl2(rng), random_gl2(rng)
        p = ContactPoint((rng.randint(-5, 5),), (rng.randint(-5, 5),), rng.randint(-5, 5))
        assert contact_apply(g1, contact_apply(g2, p)) == contact_apply(g1 @ g2, p)


def test_contact_apply_rejects_singular():
    with pytest.raises(ValueError):
        contact_apply(ExactMatrix([[1, 2], [2, 4]]), ContactPoint((1,), (1,), 0))


def test_relative_invariant_weight_symbolic():
    """R = xy - 2u picks up exactly det(g) under the lifted action."""
    al, be, ga, de, x, y, u = (
        MultiPoly.variable(aux_var(name)) for name in ("al", "be", "ga", "de", "x", "y", "u")
    )
    half = rat(1, 2)
    det = al * de - be * ga
    nx = al * x + be * y
    ny = ga * x + de * y
    nu = det * (u - half * x * y) + half * nx * ny
    new_r = nx * ny - 2 * nu
    assert new_r == det * (x * y - 2 * u)


def test_contact_relative_values_and_weights():
    p = ContactPoint((1,), (1,), 0)
    cfg = ContactConfig(1, (p, ContactPoint((0,), (2,), 1)))
    rel = contact_relative(cfg)
    assert rel["R_k"][0] == 1  # 1*1 - 0
    assert rel["R_ij"][(1, 2)] == 2  # the planar a12 of the projections
    rng = random.Random(73)
    for _ in range(10):
        cfg = random_contact(1, 4, rng)
        g = random_gl2(rng)
        det = g.data[0][0] * g.data[1][1] - g.data[0][1] * g.data[1][0]
        moved = contact_transform(g, cfg)
        rel0, rel1 = contact_relative(cfg), contact_relative(moved)
        assert rel1["R_k"] == [det * r for r in rel0["R_k"]]
        assert all(rel1["R_ij"][k] == det * v for k, v in rel0["R_ij"].items())


def test_contact_absolute_cardinalities():
    rng = random.Random(74)
    for m in range(2, 7):
        while True:
            cfg = random_contact(1, m, rng)
            try:
                sig = contact_absolute(cfg)
                break
            except GenericityError:
                continue
        assert len(sig.values) == 3 * m - 4 == dim_bbar(m, 1)
    while True:
        cfg = random_contact(2, 5, rng)
        try:
            sig = contact_absolute(cfg)
            break
        except GenericityError:
            continue
    assert len(sig.values) == dim_bbar(5, 2) == (2 * 2 + 1) * 5 - 2 * 5 - 1


def test_contact_absolute_invariance():
    rng = random.Random(75)
    for _ in range(10):
        cfg = random_contact(1, 4, rng)
        g = random_gl2(rng)
        try:
            sig = contact_absolute(cfg)
        except GenericityError:
            continue
        assert sig == contact_absolute(contact_transform(g, cfg))


def test_eliminated_entries_reconstruct():
    # T_kl = (T_1k T_2l - T_1l T_2k) / T_12 recovers the dropped ratios (n=1)
    rng = random.Random(76)
    done = 0
    while done < 10:
        cfg = random_contact(1, 5, rng)
        rel = contact_relative(cfg)
        rm = rel["R_k"][-1]
        r12 = rel["R_ij"][(1, 2)]
        if rm == 0 or r12 == 0:
            continue
        t = {k: v / rm for k, v in rel["R_ij"].items()}
        for (k, l) in ((3, 4), (3, 5), (4, 5)):
            recon = (t[(1, k)] * t[(2, l)] - t[(1, l)] * t[(2, k)]) / t[(1, 2)]
            assert recon == t[(k, l)]
        done += 1


def test_contact_equivalence_round_trip():
    rng = random.Random(77)
    for _ in range(10):
        cfg = random_contact(1, 4, rng)
        g = random_gl2(rng)
        try:
            assert contact_equivalent(cfg, contact_transform(g, cfg))
        except GenericityError:
            continue


def test_contact_equivalence_detects_perturbation():
    rng = random.Random(78)
    cfg = random_contact(1, 4, rng)
    pts = list(cfg.points)
    pts[0] = ContactPoint(pts[0].x, pts[0].y, pts[0].u + 1)
    other = ContactConfig(1, tuple(pts))
    try:
        assert not contact_equivalent(cfg, other)
        assert contact_equivalent(cfg, cfg)
    except GenericityError:
        pytest.skip("degenerate draw")


def test_contact_lift_preserves_invariants_n2():
    # partial transport for n > 1: symplectic in (x, y), u adjusted to fix R_k
    rng = random.Random(79)
    cfg = random_contact(2, 5, rng)
    m = random_symplectic(2, 10, seed=5)
    moved = contact_lift_symplectic(m, cfg)
    rel0, rel1 = contact_relative(cfg), contact_relative(moved)
    assert rel0["R_k"] == rel1["R_k"]
    assert rel0["R_ij"] == rel1["R_ij"]
    try:
        assert contact_absolute(cfg) == contact_absolute(moved)
    except GenericityError:
        pass


def test_contact_rm_rotation_fallback():
    # R of the last point vanishes; one rotation rescues the signature
    good = ContactPoint((1,), (1,), 1)  # R = -1
    bad = ContactPoint((2,), (1,), 1)  # R = 0
    cfg = ContactConfig(1, (good, ContactPoint((0,), (1,), 3), bad))
    sig = contact_absolute(cfg)
    assert len(sig.values) == 5
    all_bad = ContactConfig(1, (bad, bad))
    with pytest.raises(GenericityError):
        contact_absolute(all_bad)


def test_contact_json_round_trip():
    cfg = ContactConfig(
        1, (ContactPoint((1,), (2,), "1/3"), ContactPoint(("0.5",), (0,), 2))
    )
    assert contact_config_from_dict(contact_config_to_dict(cfg)) == cfg


def test_dim_bbar_small_m_branch():
    assert dim_bbar(2, 2) == 2  # C(3,2) - 1
    assert dim_bbar(3, 2) == 5
    assert dim_bbar(6, 1) == 14


def test_contact_var_constructor():
    v = contact_var(3)
    assert v == ("u", 3)
    p = MultiPoly.variable(v)
    assert str(p) == "u3"


def test_contact_signature_via_group_dispatch():
    from sympjoint.normal_form import signature

    rng = random.Random(95)
    cfg = random_contact(1, 3, rng)
    sig = signature(cfg, "contact")
    assert sig == contact_absolute(cfg)
    with pytest.raises(ValueError):
        signature(PointConfig(1, ((1, 0), (0, 1))), "contact")
