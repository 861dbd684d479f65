"""Lower-bound Frechet decision: propagation, traces, witnesses, search."""

import random
from fractions import Fraction as F

import pytest

from lbfrechet.lower_bound import (
    LbTrace,
    _reduce,
    _three,
    _two,
    clip_box_for,
    compute_lb,
    decide_lb,
    extract_witness,
)
from lbfrechet.model import Precise, UncertainCurve, is_realisation, make_interval, make_set
from lbfrechet.oracle import EnumerationSpec, bound_oracle
from lbfrechet.precise import frechet_decide, frechet_value
from lbfrechet.regions import bounds_subset, close_bounds, normalize_pieces


def ic(*spans):
    pts = []
    for s in spans:
        if isinstance(s, tuple):
            pts.append(make_interval(F(s[0]), F(s[1])))
        else:
            pts.append(Precise(F(s)))
    return UncertainCurve(pts)


FIG_U = ic((0, 1))
FIG_V = ic((F(-3, 2), F(-1, 5)), (F(3, 2), 2))


def test_single_interval_pair_projection():
    out = decide_lb(FIG_U, FIG_V, F(1))
    assert out.feasible
    assert out.final_region.x_projection() == [(F(1, 2), F(4, 5))]


def test_single_interval_pair_witness():
    out = decide_lb(FIG_U, FIG_V, F(1), trace=True)
    wit = extract_witness(out.trace)
    assert wit is not None
    wu, wv = wit
    assert is_realisation(wu, FIG_U)
    assert is_realisation(wv, FIG_V)
    assert frechet_decide(list(wu), list(wv), F(1))
    assert F(1, 2) <= wu[0] <= F(4, 5)


def test_delta_must_be_positive():
    with pytest.raises(ValueError):
        decide_lb(FIG_U, FIG_V, F(0))
    with pytest.raises(ValueError):
        decide_lb(FIG_U, FIG_V, F(-1))
    with pytest.raises(ValueError):
        compute_lb(FIG_U, FIG_V, F(0))


def test_finite_set_vertices_hulled_with_warning():
    u = UncertainCurve([make_set([F(0), F(1)])])
    hull = ic((0, 1))
    with pytest.raises(ValueError):
        decide_lb(u, FIG_V, F(1), strict=True)
    with pytest.warns(UserWarning):
        got = decide_lb(u, FIG_V, F(1))
    want = decide_lb(hull, FIG_V, F(1))
    assert got.feasible == want.feasible
    assert got.final_region.equals(want.final_region)


def test_single_vertex_pair():
    u = ic((0, 1))
    v = ic((5, 6))
    assert decide_lb(u, v, F(4)).feasible
    assert not decide_lb(u, v, F(7, 2)).feasible
    # witness at the exact threshold pins both endpoints
    out = decide_lb(u, v, F(4), trace=True)
    wu, wv = extract_witness(out.trace)
    assert abs(wu[0] - wv[0]) <= F(4)


def test_all_precise_matches_frechet_value():
    rng = random.Random(2210)
    for _ in range(80):
        a = [F(rng.randint(-5, 5)) for _ in range(rng.randint(1, 6))]
        b = [F(rng.randint(-5, 5)) for _ in range(rng.randint(1, 6))]
        u = UncertainCurve([Precise(x) for x in a])
        v = UncertainCurve([Precise(x) for x in b])
        val = frechet_value(a, b)
        for probe in (val, val + 1, val + F(1, 2), max(val - F(1, 3), F(1, 7))):
            if probe <= 0:
                continue
            assert decide_lb(u, v, probe).feasible == (val <= probe)


def random_interval_curve(rng, max_len=5):
    pts = []
    for _ in range(rng.randint(1, max_len)):
        lo = F(rng.randint(-6, 5), 2)
        pts.append(make_interval(lo, lo + F(rng.randint(0, 4), 2)))
    return UncertainCurve(pts)


def test_traced_and_fast_paths_agree():
    rng = random.Random(3141)
    for _ in range(120):
        u = random_interval_curve(rng)
        v = random_interval_curve(rng)
        delta = F(rng.randint(1, 4), 2)
        fast = decide_lb(u, v, delta)
        traced = decide_lb(u, v, delta, trace=True)
        assert fast.feasible == traced.feasible
        assert fast.final_region.equals(traced.final_region)
        assert fast.trace is None and isinstance(traced.trace, LbTrace)


def test_propagated_piece_counts():
    rng = random.Random(3142)
    checked = 0
    for _ in range(60):
        u = random_interval_curve(rng)
        v = random_interval_curve(rng)
        delta = F(rng.randint(1, 3), 2)
        trace = decide_lb(u, v, delta, trace=True).trace
        for kind in "UD":
            for (i, j), pieces in trace.tables[kind].items():
                limit = 1 if i == 1 else 2
                assert len(pieces) <= limit, (kind, i, j)
                checked += 1
        for kind in "RL":
            for (i, j), pieces in trace.tables[kind].items():
                limit = 1 if j == 1 else 2
                assert len(pieces) <= limit, (kind, i, j)
                checked += 1
    assert checked > 200


def test_trace_cell_and_provenance():
    out = decide_lb(ic((0, 1), (2, 3)), ic((0, 2), (1, 3)), F(1), trace=True)
    trace = out.trace
    seen = set()
    for kind in "UDRL":
        for (i, j) in trace.tables[kind]:
            cell = trace.cell(i, j)
            for name, region in cell.provenance.get(kind, ()):
                seen.add(name)
                assert not region.is_empty or region.piece_count == 0
    assert seen <= {"base", "U", "D", "R", "L"}
    assert "base" in seen


def test_trace_dump_writes_files(tmp_path):
    out = decide_lb(FIG_U, FIG_V, F(1), trace=True)
    out.trace.dump_to(str(tmp_path))
    for name in ("U.txt", "D.txt", "R.txt", "L.txt", "final.txt"):
        assert (tmp_path / name).exists()
    assert (tmp_path / "final.txt").read_text().strip()


def test_decision_agrees_with_sampled_oracle():
    rng = random.Random(3143)
    spec_hits = 0
    for _ in range(40):
        u = random_interval_curve(rng, max_len=3)
        v = random_interval_curve(rng, max_len=3)
        delta = F(rng.randint(1, 3), 2)
        inject = []
        for c in (u, v):
            for lo, hi in (p.span() for p in c.points):
                inject += [lo, hi, lo + delta, hi - delta, lo - delta, hi + delta]
        spec = EnumerationSpec(resolution=2, include_positions=tuple(inject))
        sampled = bound_oracle(u, v, "frechet", "lower", spec)
        decision = decide_lb(u, v, delta, trace=True)
        # the sampled minimum can only overshoot the true minimum
        if sampled <= delta:
            assert decision.feasible
            spec_hits += 1
        if decision.feasible:
            wu, wv = extract_witness(decision.trace)
            assert frechet_decide(list(wu), list(wv), delta)
            assert is_realisation(wu, u) and is_realisation(wv, v)
        else:
            assert sampled > delta
    assert spec_hits > 5


def test_compute_lb_sandwich():
    rng = random.Random(3144)
    tol = F(1, 64)
    for _ in range(25):
        u = random_interval_curve(rng, max_len=4)
        v = random_interval_curve(rng, max_len=4)
        got = compute_lb(u, v, tol)
        if got == 0:
            uspan, vspan = u.span(), v.span()
            assert max(uspan[0] - vspan[1], vspan[0] - uspan[1]) <= 0
            continue
        assert decide_lb(u, v, got).feasible
        if got - tol > 0:
            assert not decide_lb(u, v, got - tol).feasible


def test_compute_lb_identical_precise():
    # overlapping spans force a binary search, which bottoms out within tol
    u = ic(0, 3, 1)
    tol = F(1, 32)
    got = compute_lb(u, u, tol)
    assert 0 < got <= tol
    assert decide_lb(u, u, got).feasible
    # identical single points short-circuit to zero
    p = ic(2)
    assert compute_lb(p, p, tol) == 0


def test_clip_box_covers_positions():
    box = clip_box_for(FIG_U, FIG_V, F(1))
    for curve in (FIG_U, FIG_V):
        lo, hi = curve.span()
        assert box.lo <= lo and hi <= box.hi


# --- piece reducers ----------------------------------------------------------


def _generic_reduce(ps):
    out = []
    for p in ps:
        if any(bounds_subset(p, q) for q in out):
            continue
        out = [q for q in out if not bounds_subset(q, p)]
        out.append(p)
    return tuple(out)


def _rand_piece(rng):
    raw = close_bounds(
        *sorted((rng.randint(-6, 6), rng.randint(-6, 6))),
        *sorted((rng.randint(-6, 6), rng.randint(-6, 6))),
        *sorted((rng.randint(-12, 12), rng.randint(-12, 12))),
    )
    return raw


def test_reducers_match_generic_subset_filter():
    rng = random.Random(88)
    for _ in range(3000):
        ps = []
        while len(ps) < rng.randint(0, 4):
            p = _rand_piece(rng)
            if p is not None:
                ps.append(p)
        want = _generic_reduce(ps)
        got = _reduce(list(ps))
        # two or fewer survivors keep arrival order; more go through the
        # full merge, which sorts and may coalesce pieces
        if len(want) <= 2:
            assert got == want
        else:
            assert got == normalize_pieces(want)
        if len(ps) == 2:
            assert _two(*ps) == want
        if len(ps) == 3:
            assert _three(*ps) == (want if len(want) <= 2 else normalize_pieces(want))
