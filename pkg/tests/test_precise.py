"""Precise-curve metrics against hand-frozen values and independent oracles."""

import random
from fractions import Fraction as F

import pytest

from lbfrechet.model import growing_curve
from lbfrechet.precise import (
    discrete_frechet,
    discrete_weak,
    frechet_decide,
    frechet_value,
    r_dp,
    rm_dp,
    weak_frechet_1d,
)

from oracles import (
    discrete_frechet_recursive,
    discrete_weak_bfs,
    frechet_decide_reference,
    weak_frechet_cells_value,
)


def fr(xs):
    return [F(x) for x in xs]


# (a, b, discrete, weak8, weak4, frechet, weak_continuous)
TABLE = [
    ([0], [0], 0, 0, 0, 0, 0),
    ([0], [3], 3, 3, 3, 3, 3),
    ([0, 4], [0, 4], 0, 0, 4, 0, 0),
    ([0, 4], [4, 0], 4, 4, 4, 4, 4),
    ([0, 6, 0], [0, 6], 6, 6, 6, 6, 6),
    ([0, 10, 0, 10], [0, 10], 10, 0, 10, 5, 0),
    ([0, 5, 1, 6], [0, 6], 5, 1, 5, 2, 0),
    ([2, -3, 4], [0, 0, 0], 4, 4, 4, 4, 4),
    ([F(1, 2), F(7, 3)], [F(-1, 6), F(5, 2), F(1, 3)], 2, 2, 2, 2, 2),
    ([1, 1, 1, 1], [1], 0, 0, 0, 0, 0),
    ([0, 8, -2, 9], [1, 7, -1, 8], 1, 1, 10, 1, 1),
    ([-5, 5, -5], [5, -5, 5], 10, 10, 10, 10, 10),
]


@pytest.mark.parametrize("a,b,disc,w8,w4,cont,wcont", TABLE)
def test_metric_table(a, b, disc, w8, w4, cont, wcont):
    a, b = fr(a), fr(b)
    assert discrete_frechet(a, b) == F(disc)
    assert discrete_weak(a, b, adjacency=8) == F(w8)
    assert discrete_weak(a, b) == F(w8)
    assert discrete_weak(a, b, adjacency=4) == F(w4)
    assert frechet_value(a, b) == F(cont)
    assert weak_frechet_1d(a, b) == F(wcont)


@pytest.mark.parametrize("a,b,disc,w8,w4,cont,wcont", TABLE)
def test_metric_table_symmetry(a, b, disc, w8, w4, cont, wcont):
    a, b = fr(a), fr(b)
    assert discrete_frechet(b, a) == F(disc)
    assert discrete_weak(b, a, adjacency=4) == F(w4)
    assert frechet_value(b, a) == F(cont)
    assert weak_frechet_1d(b, a) == F(wcont)


def test_discrete_weak_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        discrete_weak(fr([0]), fr([0]), adjacency=6)


def test_empty_curves_rejected():
    for fn in (discrete_frechet, frechet_value, weak_frechet_1d, r_dp, rm_dp):
        with pytest.raises(ValueError):
            fn([], fr([0]))
        with pytest.raises(ValueError):
            fn(fr([0]), [])


def test_frechet_decide_negative_delta():
    with pytest.raises(ValueError):
        frechet_decide(fr([0]), fr([0]), F(-1))


def random_curve(rng, max_len=7, lo=-5, hi=5):
    n = rng.randint(1, max_len)
    return [F(rng.randint(lo, hi)) for _ in range(n)]


def test_random_agreement_with_oracles():
    rng = random.Random(1203)
    for _ in range(250):
        a = random_curve(rng)
        b = random_curve(rng)
        assert discrete_frechet(a, b) == discrete_frechet_recursive(a, b)
        assert discrete_weak(a, b, adjacency=8) == discrete_weak_bfs(a, b, 8)
        assert discrete_weak(a, b, adjacency=4) == discrete_weak_bfs(a, b, 4)
        assert weak_frechet_1d(a, b) == weak_frechet_cells_value(a, b)


def test_frechet_value_boundary_is_exact():
    rng = random.Random(77)
    eps = F(1, 997)
    for _ in range(150):
        a = random_curve(rng, max_len=6)
        b = random_curve(rng, max_len=6)
        v = frechet_value(a, b)
        assert frechet_decide(a, b, v)
        assert frechet_decide_reference(a, b, v)
        if v > 0:
            assert not frechet_decide(a, b, v - eps)
            assert not frechet_decide_reference(a, b, v - eps)


def test_frechet_decide_matches_reference():
    rng = random.Random(78)
    for _ in range(200):
        a = random_curve(rng, max_len=6)
        b = random_curve(rng, max_len=6)
        d = F(rng.randint(0, 10), rng.randint(1, 3))
        assert frechet_decide(a, b, d) == frechet_decide_reference(a, b, d)


def test_frechet_value_bounds_other_metrics():
    rng = random.Random(79)
    for _ in range(150):
        a = random_curve(rng)
        b = random_curve(rng)
        v = frechet_value(a, b)
        assert weak_frechet_1d(a, b) <= v <= discrete_frechet(a, b)
        assert discrete_weak(a, b, adjacency=8) <= discrete_weak(a, b, adjacency=4)


# --- one-way traversal recurrences -------------------------------------------


RDP_TABLE = [
    ([0, 5, 1, 6], [0, 6], 0),
    ([0, 10, 0, 10], [0, 10], 0),
    ([0, 8, -2, 9], [1, 7, -1, 8], 1),
    ([2, -3, 4], [0, 0, 0], 3),
    ([0], [3], 3),
]


@pytest.mark.parametrize("a,b,want", RDP_TABLE)
def test_r_dp_frozen(a, b, want):
    a, b = fr(a), fr(b)
    assert r_dp(a, b) == F(want)
    assert rm_dp(a, b) == F(want)


def test_grown_curve_dps_agree():
    # on grown curves the last edge spans the whole prefix image, so the
    # edge-image and prefix-image recurrences coincide
    rng = random.Random(505)
    for _ in range(300):
        a = random_curve(rng, max_len=8)
        b = random_curve(rng, max_len=8)
        ga, gb = list(growing_curve(a)), list(growing_curve(b))
        assert rm_dp(ga, gb) == r_dp(ga, gb)


def test_growing_never_raises_r_dp():
    # growing removes charged interior vertices, so the one-way value can
    # only drop
    rng = random.Random(506)
    for _ in range(300):
        a = random_curve(rng, max_len=8)
        b = random_curve(rng, max_len=8)
        ga, gb = list(growing_curve(a)), list(growing_curve(b))
        assert r_dp(ga, gb) <= r_dp(a, b)


def test_r_dp_can_drop_under_growing():
    # growing <0,2,1> truncates the trailing retreat, so the interior
    # maximum 2 becomes the final vertex and is no longer charged
    a = fr([0])
    b = fr([0, 2, 1])
    assert r_dp(a, b) == 2
    ga, gb = list(growing_curve(a)), list(growing_curve(b))
    assert gb == fr([0, 2])
    assert r_dp(ga, gb) == 0
    assert rm_dp(ga, gb) == 0
    # the two-way maximum still recovers the weak distance
    assert weak_frechet_1d(a, b) == 2


def test_r_dp_grow_identity_on_grown_inputs():
    # growing is idempotent, so curves already in grown form satisfy the
    # identity exactly
    rng = random.Random(508)
    for _ in range(300):
        a = list(growing_curve(random_curve(rng, max_len=8)))
        b = list(growing_curve(random_curve(rng, max_len=8)))
        ga, gb = list(growing_curve(a)), list(growing_curve(b))
        assert ga == a and gb == b
        assert r_dp(ga, gb) == r_dp(a, b)
        assert rm_dp(ga, gb) == r_dp(a, b)


def test_weak_is_two_sided_r_dp():
    rng = random.Random(507)
    for _ in range(200):
        a = random_curve(rng, max_len=7)
        b = random_curve(rng, max_len=7)
        fwd = r_dp(a, b)
        bwd = r_dp(list(reversed(a)), list(reversed(b)))
        assert weak_frechet_1d(a, b) == max(fwd, bwd)
