"""Distances between precise 1D polygonal curves, all exact.

Continuous Frechet via free-space interval propagation, discrete Frechet
via the classic coupling recurrence, weak Frechet through the prefix-image
recurrence (run on the curves and on their reversals), and the discrete
weak variant as a bottleneck path in the vertex-pair grid.

Float infinity appears only as an unreachable sentinel in min/max chains;
every finite value stays a Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

INF = float("inf")

_Iv = Optional[tuple[Fraction, Fraction]]


def _dist_to_interval(x: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    if x < lo:
        return lo - x
    if x > hi:
        return x - hi
    return Fraction(0)


def _check_curves(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(y) for y in b]
    if not a or not b:
        raise ValueError("curves need at least one vertex")
    return a, b


def frechet_decide(a: Sequence[Fraction], b: Sequence[Fraction], delta) -> bool:
    """Is the continuous Frechet distance of the two curves <= delta?"""
    a, b = _check_curves(a, b)
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    m, n = len(a), len(b)
    if abs(a[0] - b[0]) > delta or abs(a[-1] - b[-1]) > delta:
        return False
    if m == 1:
        return all(abs(a[0] - y) <= delta for y in b)
    if n == 1:
        return all(abs(x - b[0]) <= delta for x in a)

    one = Fraction(1)
    zero = Fraction(0)

    def free(c: Fraction, lo: Fraction, hi: Fraction) -> _Iv:
        """Parameters t in [0,1] with |(1-t) lo + t hi - c| <= delta."""
        run = hi - lo
        if run == 0:
            return (zero, one) if abs(lo - c) <= delta else None
        t0 = (c - delta - lo) / run
        t1 = (c + delta - lo) / run
        if t0 > t1:
            t0, t1 = t1, t0
        if t0 < zero:
            t0 = zero
        if t1 > one:
            t1 = one
        return (t0, t1) if t0 <= t1 else None

    # lr[j]: reachable interval on the left boundary of cell (column, j);
    # bb[column]: reachable interval on the bottom boundary of cell
    # (column, 0).  Both seeded by walking straight along the axes.
    lr: list[_Iv] = [None] * (n - 1)
    ok = True
    for j in range(n - 1):
        f = free(a[0], b[j], b[j + 1])
        if not ok or f is None or f[0] > 0:
            ok = False
            continue
        lr[j] = f
        if f[1] < 1:
            ok = False
    bb: list[_Iv] = [None] * (m - 1)
    ok = True
    for i in range(m - 1):
        f = free(b[0], a[i], a[i + 1])
        if not ok or f is None or f[0] > 0:
            ok = False
            continue
        bb[i] = f
        if f[1] < 1:
            ok = False

    top_last: _Iv = None
    for i in range(m - 1):
        new_lr: list[_Iv] = [None] * (n - 1)
        br = bb[i]
        for j in range(n - 1):
            cur_l, cur_b = lr[j], br
            fr = free(a[i + 1], b[j], b[j + 1])
            if fr is None or (cur_l is None and cur_b is None):
                nr = None
            elif cur_b is not None:
                nr = fr
            else:
                lo = max(fr[0], cur_l[0])
                nr = (lo, fr[1]) if lo <= fr[1] else None
            new_lr[j] = nr
            ft = free(b[j + 1], a[i], a[i + 1])
            if ft is None or (cur_l is None and cur_b is None):
                nt = None
            elif cur_l is not None:
                nt = ft
            else:
                lo = max(ft[0], cur_b[0])
                nt = (lo, ft[1]) if lo <= ft[1] else None
            br = nt
        top_last = br
        lr = new_lr
    right_last = lr[n - 2]
    if right_last is not None and right_last[1] == 1:
        return True
    return top_last is not None and top_last[1] == 1


def frechet_value(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """The continuous Frechet distance: smallest feasible critical value.

    In one dimension every critical value is a vertex-vertex distance or
    half a vertex-vertex distance within one curve, so we binary-search
    that candidate set with the decision procedure.
    """
    a, b = _check_curves(a, b)
    cands = {Fraction(0)}
    for x in a:
        for y in b:
            cands.add(abs(x - y))
    for xs in (a, b):
        for i in range(len(xs)):
            for k in range(i + 1, len(xs)):
                cands.add(abs(xs[i] - xs[k]) / 2)
    ordered = sorted(cands)
    lo, hi = 0, len(ordered) - 1
    if frechet_decide(a, b, ordered[0]):
        return ordered[0]
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if frechet_decide(a, b, ordered[mid]):
            hi = mid
        else:
            lo = mid
    return ordered[hi]


def discrete_frechet(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Classic coupling recurrence, quadratic time, rolling rows."""
    a, b = _check_curves(a, b)
    m, n = len(a), len(b)
    prev = [INF] * n
    for i in range(m):
        cur = [INF] * n
        for j in range(n):
            d = abs(a[i] - b[j])
            if i == 0 and j == 0:
                best = d
            else:
                reach = min(
                    prev[j] if i > 0 else INF,
                    cur[j - 1] if j > 0 else INF,
                    prev[j - 1] if i > 0 and j > 0 else INF,
                )
                best = reach if reach > d else d
            cur[j] = best
        prev = cur
    return prev[n - 1]


def r_dp(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Forward bottleneck recurrence over prefix images.

    Entry (i, j) is the cheapest max-cost of interleaving the first i
    vertices of a with the first j of b, where advancing a vertex of one
    curve costs its predecessor's distance to the image of the other
    curve's processed prefix.
    """
    a, b = _check_curves(a, b)
    m, n = len(a), len(b)
    alo: list[Fraction] = []
    ahi: list[Fraction] = []
    lo = hi = a[0]
    for x in a:
        lo = lo if lo <= x else x
        hi = hi if hi >= x else x
        alo.append(lo)
        ahi.append(hi)
    blo: list[Fraction] = []
    bhi: list[Fraction] = []
    lo = hi = b[0]
    for y in b:
        lo = lo if lo <= y else y
        hi = hi if hi >= y else y
        blo.append(lo)
        bhi.append(hi)
    prev = [INF] * n
    for i in range(m):
        cur = [INF] * n
        for j in range(n):
            if i == 0 and j == 0:
                cur[0] = abs(a[0] - b[0])
                continue
            best = INF
            if i > 0 and prev[j] is not INF:
                pen = _dist_to_interval(a[i - 1], blo[j], bhi[j])
                cand = prev[j] if prev[j] > pen else pen
                if cand < best:
                    best = cand
            if j > 0 and cur[j - 1] is not INF:
                pen = _dist_to_interval(b[j - 1], alo[i], ahi[i])
                cand = cur[j - 1] if cur[j - 1] > pen else pen
                if cand < best:
                    best = cand
            cur[j] = best
        prev = cur
    return prev[n - 1]


def rm_dp(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Variant of r_dp whose penalties use only the last processed edge of
    the other curve (its image degenerates to the first vertex when no
    edge has been processed yet)."""
    a, b = _check_curves(a, b)
    m, n = len(a), len(b)

    def edge_img(xs, j):
        if j == 0:
            return xs[0], xs[0]
        lo, hi = xs[j - 1], xs[j]
        return (lo, hi) if lo <= hi else (hi, lo)

    prev = [INF] * n
    for i in range(m):
        cur = [INF] * n
        for j in range(n):
            if i == 0 and j == 0:
                cur[0] = abs(a[0] - b[0])
                continue
            best = INF
            if i > 0 and prev[j] is not INF:
                lo, hi = edge_img(b, j)
                pen = _dist_to_interval(a[i - 1], lo, hi)
                cand = prev[j] if prev[j] > pen else pen
                if cand < best:
                    best = cand
            if j > 0 and cur[j - 1] is not INF:
                lo, hi = edge_img(a, i)
                pen = _dist_to_interval(b[j - 1], lo, hi)
                cand = cur[j - 1] if cur[j - 1] > pen else pen
                if cand < best:
                    best = cand
            cur[j] = best
        prev = cur
    return prev[n - 1]


def weak_frechet_1d(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Weak Frechet distance on the line: the forward recurrence run from
    both ends, worse of the two."""
    a, b = _check_curves(a, b)
    fwd = r_dp(a, b)
    bwd = r_dp(a[::-1], b[::-1])
    return fwd if fwd >= bwd else bwd


def discrete_weak(
    a: Sequence[Fraction],
    b: Sequence[Fraction],
    adjacency: int = 8,
) -> Fraction:
    """Bottleneck path value between corners of the vertex-pair grid.

    Spots are vertex pairs weighted by their distance; steps move to grid
    neighbours (4- or 8-adjacency).  Computed by activating spots in
    weight order with a union-find until the corners connect.
    """
    a, b = _check_curves(a, b)
    if adjacency not in (4, 8):
        raise ValueError(f"adjacency must be 4 or 8, got {adjacency}")
    m, n = len(a), len(b)
    if m == 1 and n == 1:
        return abs(a[0] - b[0])
    weights = sorted(
        (abs(a[i] - b[j]), i * n + j) for i in range(m) for j in range(n)
    )
    parent = list(range(m * n))
    active = [False] * (m * n)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if adjacency == 4:
        steps = ((1, 0), (-1, 0), (0, 1), (0, -1))
    else:
        steps = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1))
    start, goal = 0, m * n - 1
    k = 0
    total = len(weights)
    while k < total:
        w = weights[k][0]
        while k < total and weights[k][0] == w:
            spot = weights[k][1]
            i, j = divmod(spot, n)
            active[spot] = True
            for di, dj in steps:
                ii, jj = i + di, j + dj
                if 0 <= ii < m and 0 <= jj < n and active[ii * n + jj]:
                    ra, rb = find(spot), find(ii * n + jj)
                    if ra != rb:
                        parent[ra] = rb
            k += 1
        if active[start] and active[goal] and find(start) == find(goal):
            return w
    raise AssertionError("corner spots never connected")
