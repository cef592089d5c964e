import random
from math import comb

import pytest

from sympjoint.exact import Rat
from sympjoint.field_generators import (
    basic_set,
    dim_d,
    eliminate_entry,
    generic_jacobian_rank,
    jacobian_rank,
    stabilizer_dim,
)
from sympjoint.invariants import GenericityError, gram, random_config


def test_dim_d_known_values():
    assert dim_d(4, 1) == 5
    assert dim_d(5, 1) == 7
    for m in range(2, 9):
        assert dim_d(m, 1) == 2 * m - 3
    assert dim_d(2, 2) == 1


def test_dim_d_boundary_consistency():
    for n in (1, 2, 3):
        m = 2 * n
        assert 2 * n * m - n * (2 * n + 1) == comb(m, 2) == dim_d(m, n)


def test_basic_set_layout():
    bs = basic_set(4, 1)
    assert bs.pairs == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))
    assert len(bs.pairs) == dim_d(4, 1)
    assert basic_set(3, 2).pairs == ((1, 2), (1, 3), (2, 3))
    assert len(basic_set(6, 2).pairs) == 14 == dim_d(6, 2)


def test_eliminate_entry_n1_closed_form():
    rng = random.Random(50)
    for _ in range(10):
        vals = {
            (i, j): Rat(rng.randint(-9, 9)) for i in range(1, 5) for j in range(i + 1, 5)
        }
        if vals[(1, 2)] == 0:
            continue
        got = eliminate_entry(vals, 3, 4, 1)
        expected = (vals[(1, 3)] * vals[(2, 4)] - vals[(1, 4)] * vals[(2, 3)]) / vals[(1, 2)]
        assert got == expected


def _a56_displayed(a):
    """The closed form for a56 as displayed, used as an independent oracle."""
    num = (
        a[(1, 2)] * a[(3, 5)] * a[(4, 6)]
        - a[(1, 2)] * a[(3, 6)] * a[(4, 5)]
        - a[(1, 3)] * a[(2, 5)] * a[(4, 6)]
        + a[(1, 3)] * a[(2, 6)] * a[(4, 5)]
        + a[(1, 4)] * a[(2, 5)] * a[(3, 6)]
        - a[(1, 4)] * a[(2, 6)] * a[(3, 5)]
        + a[(1, 5)] * a[(2, 3)] * a[(4, 6)]
        - a[(1, 5)] * a[(2, 4)] * a[(3, 6)]
        + a[(1, 5)] * a[(2, 6)] * a[(3, 4)]
        - a[(1, 6)] * a[(2, 3)] * a[(4, 5)]
        + a[(1, 6)] * a[(2, 4)] * a[(3, 5)]
        - a[(1, 6)] * a[(2, 5)] * a[(3, 4)]
    )
    den = a[(1, 2)] * a[(3, 4)] - a[(1, 3)] * a[(2, 4)] + a[(1, 4)] * a[(2, 3)]
    return num / den


def test_eliminate_entry_n2_matches_displayed_formula():
    rng = random.Random(51)
    done = 0
    while done < 20:
        cfg = random_config(2, 6, rng)
        g = gram(cfg)
        a = {(i, j): g.value(i, j) for i in range(1, 7) for j in range(i + 1, 7)}
        den = a[(1, 2)] * a[(3, 4)] - a[(1, 3)] * a[(2, 4)] + a[(1, 4)] * a[(2, 3)]
        if den == 0:
            continue
        got = eliminate_entry(g, 5, 6, 2)
        assert got == _a56_displayed(a)
        assert got == g.value(5, 6)  # agrees with the true invariant
        done += 1


def test_eliminate_entry_agrees_with_gram_n1():
    rng = random.Random(52)
    for _ in range(10):
        cfg = random_config(1, 5, rng)
        g = gram(cfg)
        if g.value(1, 2) == 0:
            continue
        for (k, l) in ((3, 4), (3, 5), (4, 5)):
            assert eliminate_entry(g, k, l, 1) == g.value(k, l)


def test_eliminate_entry_zero_denominator():
    vals = {(i, j): Rat(0) for i in range(1, 5) for j in range(i + 1, 5)}
    del vals[(3, 4)]
    with pytest.raises(GenericityError):
        eliminate_entry(vals, 3, 4, 1)


def test_stabilizer_dims_match_binomial_formula():
    rng = random.Random(53)
    for n in (1, 2, 3):
        assert stabilizer_dim([], n) == comb(2 * n + 1, 2)
        for k in range(1, 2 * n + 1):
            pts = [tuple(Rat(rng.randint(-9, 9)) for _ in range(2 * n)) for _ in range(k)]
            assert stabilizer_dim(pts, n) == comb(2 * n - k + 1, 2)


def test_stabilizer_trivial_at_k_equals_2n():
    rng = random.Random(54)
    pts = [tuple(Rat(rng.randint(-9, 9)) for _ in range(2)) for _ in range(2)]
    assert stabilizer_dim(pts, 1) == 0


def test_jacobian_rank_known_values():
    assert generic_jacobian_rank(5, 1, seed=1) == 7
    assert generic_jacobian_rank(4, 1, seed=2) == 5
    assert generic_jacobian_rank(2, 2, seed=3) == 1


def test_jacobian_rank_matches_dim_d_everywhere():
    for n in (1, 2):
        for m in range(2, 7):
            assert generic_jacobian_rank(m, n, seed=10 * m + n) == dim_d(m, n)
    assert jacobian_rank(random_config(1, 1, random.Random(0))) == 0


def test_jacobian_rank_at_special_configuration():
    # all points on an isotropic line: every invariant vanishes identically
    cfg_pts = tuple((Rat(k), Rat(0)) for k in range(1, 4))
    from sympjoint.invariants import PointConfig

    assert jacobian_rank(PointConfig(1, cfg_pts)) < dim_d(3, 1)
