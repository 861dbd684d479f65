"""Exact plane regions bounded by horizontal, vertical, and slope-1 edges.

Every convex region whose edges are axis-parallel or have slope one is the
solution set of six bounds: xlo <= x <= xhi, ylo <= y <= yhi, and
dlo <= y - x <= dhi.  That triple of intervals is a difference-constraint
system on (x, y); tightening it to its closure makes every stored bound
attained, which turns containment and emptiness into plain comparisons.
A region is a finite union of such pieces inside a common clipping square.

All bound arithmetic is +, -, min, max and comparisons, so the same code
runs on Fractions and on pre-scaled ints.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

Bounds = tuple  # (xlo, xhi, ylo, yhi, dlo, dhi)


class Cone(Enum):
    """Directions of free movement for Minkowski sums.

    Q_* are closed quadrants (two free signed axes), H_* closed half-planes
    (one signed axis, the other unconstrained), S_* closed axis rays (one
    signed axis, the other pinned to zero).  R right, L left, U up, D down.
    """

    Q_RU = "Q_RU"
    Q_LU = "Q_LU"
    Q_RD = "Q_RD"
    Q_LD = "Q_LD"
    H_R = "H_R"
    H_L = "H_L"
    H_U = "H_U"
    H_D = "H_D"
    S_R = "S_R"
    S_L = "S_L"
    S_U = "S_U"
    S_D = "S_D"


# Which of (xlo, xhi, ylo, yhi, dlo, dhi) survive a Minkowski sum with each
# cone; the rest relax to the clipping square.  A bound survives exactly
# when no cone direction can push past it.
_KEEP = {
    Cone.Q_RU: (True, False, True, False, False, False),
    Cone.Q_LU: (False, True, True, False, True, False),
    Cone.Q_RD: (True, False, False, True, False, True),
    Cone.Q_LD: (False, True, False, True, False, False),
    Cone.H_R: (True, False, False, False, False, False),
    Cone.H_L: (False, True, False, False, False, False),
    Cone.H_U: (False, False, True, False, False, False),
    Cone.H_D: (False, False, False, True, False, False),
    Cone.S_R: (True, False, True, True, False, True),
    Cone.S_L: (False, True, True, True, True, False),
    Cone.S_U: (True, True, True, False, True, False),
    Cone.S_D: (True, True, False, True, False, True),
}

# Cone membership as sign constraints on (dx, dy): +1 means >= 0, -1 means
# <= 0, 0 means == 0, None means unconstrained.
_CONE_SIGNS = {
    Cone.Q_RU: (1, 1),
    Cone.Q_LU: (-1, 1),
    Cone.Q_RD: (1, -1),
    Cone.Q_LD: (-1, -1),
    Cone.H_R: (1, None),
    Cone.H_L: (-1, None),
    Cone.H_U: (None, 1),
    Cone.H_D: (None, -1),
    Cone.S_R: (1, 0),
    Cone.S_L: (-1, 0),
    Cone.S_U: (0, 1),
    Cone.S_D: (0, -1),
}


def cone_signs(cone: Cone) -> tuple:
    return _CONE_SIGNS[cone]


def cone_contains(cone: Cone, dx, dy) -> bool:
    sx, sy = _CONE_SIGNS[cone]
    for s, v in ((sx, dx), (sy, dy)):
        if s == 1 and v < 0:
            return False
        if s == -1 and v > 0:
            return False
        if s == 0 and v != 0:
            return False
    return True


def close_bounds(xlo, xhi, ylo, yhi, dlo, dhi) -> Optional[Bounds]:
    """Tighten six bounds to their closure, or None when inconsistent.

    A three-node difference system closes with two-hop paths only, so each
    tightened bound is a single min/max over the original bounds.
    """
    dhi2 = dhi if dhi <= yhi - xlo else yhi - xlo
    dlo2 = dlo if dlo >= ylo - xhi else ylo - xhi
    yhi2 = yhi if yhi <= xhi + dhi else xhi + dhi
    ylo2 = ylo if ylo >= xlo + dlo else xlo + dlo
    xhi2 = xhi if xhi <= yhi - dlo else yhi - dlo
    xlo2 = xlo if xlo >= ylo - dhi else ylo - dhi
    if xlo2 > xhi2 or ylo2 > yhi2 or dlo2 > dhi2:
        return None
    return (xlo2, xhi2, ylo2, yhi2, dlo2, dhi2)


def meet_bounds(a: Bounds, b: Bounds) -> Optional[Bounds]:
    return close_bounds(
        a[0] if a[0] >= b[0] else b[0],
        a[1] if a[1] <= b[1] else b[1],
        a[2] if a[2] >= b[2] else b[2],
        a[3] if a[3] <= b[3] else b[3],
        a[4] if a[4] >= b[4] else b[4],
        a[5] if a[5] <= b[5] else b[5],
    )


def mink_bounds(p: Bounds, cone: Cone, blo, bhi) -> Bounds:
    """Minkowski sum of a closed nonempty piece with a cone, relaxed to the
    clipping square."""
    keep = _KEEP[cone]
    dspan = bhi - blo
    out = close_bounds(
        p[0] if keep[0] else blo,
        p[1] if keep[1] else bhi,
        p[2] if keep[2] else blo,
        p[3] if keep[3] else bhi,
        p[4] if keep[4] else -dspan,
        p[5] if keep[5] else dspan,
    )
    assert out is not None
    return out


# Fused cone-relax-then-meet kernels for the propagation inner loop.
#
# Each _mm_* computes meet_bounds(mink_bounds(p, cone, blo, bhi), q) under
# two preconditions that the sweep guarantees: q is closed, nonempty, and
# lies inside the clipping square, and p is closed and nonempty.  The box
# arguments disappear because meeting with a piece already inside the square
# makes the relax-to-square step a no-op.  Only the components the cone
# keeps survive into the meet, so most of the generic closure collapses:
# for a closed q, bounds like min(q.yhi, q.xhi + q.dhi) equal q.yhi again.
# The remaining tightenings are written out with original (pre-tightening)
# operands on the right-hand sides, which is exactly the two-hop closure,
# and the only emptiness checks left are the ones the kept components can
# still violate.  Each kernel returns the closed meet, q itself when the
# meet leaves q unchanged, or None when it is empty.


def _mm_h_r(p, q):
    x = p[0]
    q0 = q[0]
    if x <= q0:
        return q
    if x > q[1]:
        return None
    q3 = q[3]
    q4 = q[4]
    dhi = q3 - x
    q5 = q[5]
    if dhi > q5:
        dhi = q5
    ylo = x + q4
    q2 = q[2]
    if ylo < q2:
        ylo = q2
    return (x, q[1], ylo, q3, q4, dhi)


def _mm_h_l(p, q):
    x = p[1]
    q1 = q[1]
    if x >= q1:
        return q
    if x < q[0]:
        return None
    q2 = q[2]
    q4 = q[4]
    dlo = q2 - x
    if dlo < q4:
        dlo = q4
    q5 = q[5]
    yhi = x + q5
    q3 = q[3]
    if yhi > q3:
        yhi = q3
    return (q[0], x, q2, yhi, dlo, q5)


def _mm_h_u(p, q):
    y = p[2]
    q2 = q[2]
    if y <= q2:
        return q
    if y > q[3]:
        return None
    q1 = q[1]
    q4 = q[4]
    dlo = y - q1
    if dlo < q4:
        dlo = q4
    q5 = q[5]
    xlo = y - q5
    q0 = q[0]
    if xlo < q0:
        xlo = q0
    return (xlo, q1, y, q[3], dlo, q5)


def _mm_h_d(p, q):
    y = p[3]
    q3 = q[3]
    if y >= q3:
        return q
    if y < q[2]:
        return None
    q0 = q[0]
    q5 = q[5]
    dhi = y - q0
    if dhi > q5:
        dhi = q5
    q4 = q[4]
    xhi = y - q4
    q1 = q[1]
    if xhi > q1:
        xhi = q1
    return (q0, xhi, q[2], y, q4, dhi)


def _mm_q_ru(p, q):
    q0 = q[0]
    q2 = q[2]
    x = p[0]
    if x < q0:
        x = q0
    y = p[2]
    if y < q2:
        y = q2
    if x == q0 and y == q2:
        return q
    q1 = q[1]
    q3 = q[3]
    if x > q1 or y > q3:
        return None
    q4 = q[4]
    q5 = q[5]
    t = y - q1
    dlo = q4 if q4 >= t else t
    t = q3 - x
    dhi = q5 if q5 <= t else t
    if dlo > dhi:
        return None
    t = y - q5
    xlo = x if x >= t else t
    t = x + q4
    ylo = y if y >= t else t
    return (xlo, q1, ylo, q3, dlo, dhi)


def _mm_q_ld(p, q):
    q1 = q[1]
    q3 = q[3]
    x = p[1]
    if x > q1:
        x = q1
    y = p[3]
    if y > q3:
        y = q3
    if x == q1 and y == q3:
        return q
    q0 = q[0]
    q2 = q[2]
    if x < q0 or y < q2:
        return None
    q4 = q[4]
    q5 = q[5]
    t = q2 - x
    dlo = q4 if q4 >= t else t
    t = y - q0
    dhi = q5 if q5 <= t else t
    if dlo > dhi:
        return None
    t = y - q4
    xhi = x if x <= t else t
    t = x + q5
    yhi = y if y <= t else t
    return (q0, xhi, q2, yhi, dlo, dhi)


def _mm_q_lu(p, q):
    q1 = q[1]
    q2 = q[2]
    q4 = q[4]
    xhi0 = p[1]
    if xhi0 > q1:
        xhi0 = q1
    ylo0 = p[2]
    if ylo0 < q2:
        ylo0 = q2
    dlo0 = p[4]
    if dlo0 < q4:
        dlo0 = q4
    if xhi0 == q1 and ylo0 == q2 and dlo0 == q4:
        return q
    q0 = q[0]
    q3 = q[3]
    q5 = q[5]
    t = ylo0 - xhi0
    dlo = dlo0 if dlo0 >= t else t
    if dlo > q5:
        return None
    t = ylo0 - q5
    xlo = q0 if q0 >= t else t
    t = q3 - dlo0
    xhi = xhi0 if xhi0 <= t else t
    if xlo > xhi:
        return None
    t = q0 + dlo0
    ylo = ylo0 if ylo0 >= t else t
    t = xhi0 + q5
    yhi = q3 if q3 <= t else t
    if ylo > yhi:
        return None
    return (xlo, xhi, ylo, yhi, dlo, q5)


def _mm_q_rd(p, q):
    q0 = q[0]
    q3 = q[3]
    q5 = q[5]
    xlo0 = p[0]
    if xlo0 < q0:
        xlo0 = q0
    yhi0 = p[3]
    if yhi0 > q3:
        yhi0 = q3
    dhi0 = p[5]
    if dhi0 > q5:
        dhi0 = q5
    if xlo0 == q0 and yhi0 == q3 and dhi0 == q5:
        return q
    q1 = q[1]
    q2 = q[2]
    q4 = q[4]
    t = yhi0 - xlo0
    dhi = dhi0 if dhi0 <= t else t
    if dhi < q4:
        return None
    t = q2 - dhi0
    xlo = xlo0 if xlo0 >= t else t
    t = yhi0 - q4
    xhi = q1 if q1 <= t else t
    if xlo > xhi:
        return None
    t = xlo0 + q4
    ylo = q2 if q2 >= t else t
    t = q1 + dhi0
    yhi = yhi0 if yhi0 <= t else t
    if ylo > yhi:
        return None
    return (xlo, xhi, ylo, yhi, q4, dhi)


MINK_MEET = {
    Cone.H_R: _mm_h_r,
    Cone.H_L: _mm_h_l,
    Cone.H_U: _mm_h_u,
    Cone.H_D: _mm_h_d,
    Cone.Q_RU: _mm_q_ru,
    Cone.Q_LU: _mm_q_lu,
    Cone.Q_RD: _mm_q_rd,
    Cone.Q_LD: _mm_q_ld,
}


def mink_meet(p: Bounds, cone: Cone, q: Bounds) -> Optional[Bounds]:
    """meet_bounds(mink_bounds(p, cone, blo, bhi), q) for a closed nonempty
    q inside the clipping square; defined for quadrant and half-plane cones."""
    return MINK_MEET[cone](p, q)


def bounds_contain(p: Bounds, x, y) -> bool:
    return p[0] <= x <= p[1] and p[2] <= y <= p[3] and p[4] <= y - x <= p[5]


def bounds_subset(p: Bounds, q: Bounds) -> bool:
    """p inside q; exact when p is closed (all of p's bounds are attained)."""
    return (
        p[0] >= q[0]
        and p[1] <= q[1]
        and p[2] >= q[2]
        and p[3] <= q[3]
        and p[4] >= q[4]
        and p[5] <= q[5]
    )


def bounds_hull(p: Bounds, q: Bounds) -> Bounds:
    out = close_bounds(
        p[0] if p[0] <= q[0] else q[0],
        p[1] if p[1] >= q[1] else q[1],
        p[2] if p[2] <= q[2] else q[2],
        p[3] if p[3] >= q[3] else q[3],
        p[4] if p[4] <= q[4] else q[4],
        p[5] if p[5] >= q[5] else q[5],
    )
    assert out is not None
    return out


def bounds_lexmin(p: Bounds) -> tuple:
    """The point of p with smallest x, then smallest y among those."""
    x = p[0]
    y = p[2] if p[2] >= x + p[4] else x + p[4]
    return (x, y)


# ---------------------------------------------------------------------------
# Coverage tests.
#
# To decide whether a piece is covered by a union of pieces, peel the cover
# constraints off one piece at a time, keeping the leftover cells.
# Leftovers need strict inequalities, so cells are encoded on an integer
# grid scaled by 8 with strict bounds pulled in by 1: a comparison after
# closure mixes at most four original bounds, and a cumulative strictness
# defect below 8 can never flip a comparison between true grid values.

_STRICT_SCALE = 8


def _scale_to_int(pieces: Sequence[Bounds]) -> list[tuple[int, ...]]:
    den = 1
    for p in pieces:
        for v in p:
            den = lcm(den, v.denominator if isinstance(v, Fraction) else 1)
    f = _STRICT_SCALE * den
    return [tuple(int(v * f) for v in p) for p in pieces]


def _cell_bound(cell, k: int, value: int, upper: bool):
    c = list(cell)
    if upper:
        if value < c[2 * k + 1]:
            c[2 * k + 1] = value
    else:
        if value > c[2 * k]:
            c[2 * k] = value
    return close_bounds(*c)


def bounds_covered(target: Bounds, cover: Sequence[Bounds]) -> bool:
    """True iff the target piece is inside the union of the cover pieces."""
    scaled = _scale_to_int([target, *cover])
    cells = [scaled[0]]
    for q in scaled[1:]:
        if not cells:
            return True
        remains: list = []
        for cell in cells:
            if meet_bounds(cell, q) is None:
                remains.append(cell)
                continue
            rem = cell
            for k in range(3):
                lo, hi = q[2 * k], q[2 * k + 1]
                part = _cell_bound(rem, k, lo - 1, upper=True)
                if part is not None:
                    remains.append(part)
                rem = _cell_bound(rem, k, lo, upper=False)
                if rem is None:
                    break
                part = _cell_bound(rem, k, hi + 1, upper=False)
                if part is not None:
                    remains.append(part)
                rem = _cell_bound(rem, k, hi, upper=True)
                if rem is None:
                    break
            # Whatever remains of rem lies inside q and is discarded.
        cells = remains
    return not cells


def normalize_pieces(pieces: Iterable[Optional[Bounds]]) -> tuple[Bounds, ...]:
    """Drop empty and contained pieces, then merge pairs whose union is
    convex, to a fixpoint.  Deterministic: the output is sorted."""
    ps: list[Bounds] = []
    for p in pieces:
        if p is not None and p not in ps:
            ps.append(p)
    changed = True
    while changed:
        changed = False
        drop = set()
        for i, p in enumerate(ps):
            for j, q in enumerate(ps):
                if i != j and j not in drop and i not in drop and bounds_subset(p, q):
                    drop.add(i)
                    break
        if drop:
            ps = [p for i, p in enumerate(ps) if i not in drop]
        n = len(ps)
        for i in range(n):
            if changed:
                break
            for j in range(i + 1, n):
                h = bounds_hull(ps[i], ps[j])
                if bounds_covered(h, (ps[i], ps[j])):
                    ps = [p for k, p in enumerate(ps) if k not in (i, j)]
                    ps.append(h)
                    changed = True
                    break
    ps.sort()
    return tuple(ps)


def bounds_vertices(p: Bounds) -> list[tuple]:
    """Corner points of the piece, counterclockwise from the lowest-leftmost."""
    xlo, xhi, ylo, yhi, dlo, dhi = p
    cand = set()
    for x in (xlo, xhi):
        for y in (ylo, yhi):
            cand.add((x, y))
        for d in (dlo, dhi):
            cand.add((x, x + d))
    for y in (ylo, yhi):
        for d in (dlo, dhi):
            cand.add((y - d, y))
    pts = [c for c in cand if bounds_contain(p, c[0], c[1])]
    if len(pts) <= 2:
        return sorted(pts)
    n = len(pts)
    cx = Fraction(sum(Fraction(q[0]) for q in pts), n)
    cy = Fraction(sum(Fraction(q[1]) for q in pts), n)

    def angle_cmp(a, b):
        ax, ay = a[0] - cx, a[1] - cy
        bx, by = b[0] - cx, b[1] - cy
        ha = 0 if (ay > 0 or (ay == 0 and ax > 0)) else 1
        hb = 0 if (by > 0 or (by == 0 and bx > 0)) else 1
        if ha != hb:
            return -1 if ha < hb else 1
        cr = ax * by - ay * bx
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    pts.sort(key=functools.cmp_to_key(angle_cmp))
    start = min(range(len(pts)), key=lambda k: (pts[k][1], pts[k][0]))
    return pts[start:] + pts[:start]


# ---------------------------------------------------------------------------
# Public wrappers


@dataclass(frozen=True)
class ClipBox:
    """The square [lo, hi] x [lo, hi] every region is clipped to."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo >= self.hi:
            raise ValueError(f"clip box needs lo < hi, got [{self.lo}, {self.hi}]")

    def full_bounds(self) -> Bounds:
        span = self.hi - self.lo
        return (self.lo, self.hi, self.lo, self.hi, -span, span)


@dataclass(frozen=True)
class Piece:
    """One closed convex piece in tightened-bounds form."""

    xlo: Fraction
    xhi: Fraction
    ylo: Fraction
    yhi: Fraction
    dlo: Fraction
    dhi: Fraction

    @property
    def bounds(self) -> Bounds:
        return (self.xlo, self.xhi, self.ylo, self.yhi, self.dlo, self.dhi)

    def contains(self, x, y) -> bool:
        return bounds_contain(self.bounds, x, y)

    def vertices(self) -> list[tuple]:
        return bounds_vertices(self.bounds)


@dataclass(frozen=True)
class Region:
    """A finite union of convex pieces inside a clip box."""

    pieces: tuple[Piece, ...]
    box: ClipBox

    @staticmethod
    def empty(box: ClipBox) -> "Region":
        return Region((), box)

    @staticmethod
    def from_bounds(pieces: Iterable[Optional[Bounds]], box: ClipBox) -> "Region":
        clip = box.full_bounds()
        clipped = [meet_bounds(p, clip) for p in pieces if p is not None]
        return Region(tuple(Piece(*b) for b in normalize_pieces(clipped)), box)

    def _raw(self) -> list[Bounds]:
        return [p.bounds for p in self.pieces]

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def contains(self, x, y) -> bool:
        x, y = Fraction(x), Fraction(y)
        return any(bounds_contain(p.bounds, x, y) for p in self.pieces)

    def _check_box(self, other: "Region") -> None:
        if self.box != other.box:
            raise ValueError(f"clip box mismatch: {self.box} vs {other.box}")

    def union(self, other: "Region") -> "Region":
        self._check_box(other)
        return Region.from_bounds(self._raw() + other._raw(), self.box)

    def intersect(self, other: "Region") -> "Region":
        self._check_box(other)
        out = []
        for a in self._raw():
            for b in other._raw():
                out.append(meet_bounds(a, b))
        return Region.from_bounds(out, self.box)

    def minkowski(self, cone: Cone) -> "Region":
        box = self.box
        return Region.from_bounds(
            [mink_bounds(p, cone, box.lo, box.hi) for p in self._raw()], box
        )

    def subset(self, other: "Region") -> bool:
        self._check_box(other)
        cover = other._raw()
        return all(bounds_covered(p, cover) for p in self._raw())

    def equals(self, other: "Region") -> bool:
        return self.subset(other) and other.subset(self)

    def x_projection(self) -> list[tuple[Fraction, Fraction]]:
        """The projection onto the x axis as disjoint sorted intervals."""
        spans = sorted((p.xlo, p.xhi) for p in self.pieces)
        out: list[tuple[Fraction, Fraction]] = []
        for lo, hi in spans:
            if out and lo <= out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], hi))
            else:
                out.append((lo, hi))
        return out

    def dump_lines(self) -> list[str]:
        """One piece per line, each a counterclockwise vertex list."""
        from .model import format_scalar

        lines = []
        for p in self.pieces:
            verts = p.vertices()
            lines.append(
                " ".join(
                    f"({format_scalar(Fraction(x))},{format_scalar(Fraction(y))})"
                    for x, y in verts
                )
            )
        return lines


def band(delta: Fraction, box: ClipBox) -> Region:
    """The diagonal band |x - y| <= delta, clipped."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError(f"band needs delta > 0, got {delta}")
    full = box.full_bounds()
    return Region.from_bounds(
        [close_bounds(full[0], full[1], full[2], full[3], -delta, delta)], box
    )


def vslab(lo: Fraction, hi: Fraction, box: ClipBox) -> Region:
    """The vertical slab lo <= x <= hi, clipped."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError(f"slab needs lo <= hi, got [{lo}, {hi}]")
    full = box.full_bounds()
    return Region.from_bounds(
        [close_bounds(lo, hi, full[2], full[3], full[4], full[5])], box
    )


def hslab(lo: Fraction, hi: Fraction, box: ClipBox) -> Region:
    """The horizontal slab lo <= y <= hi, clipped."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError(f"slab needs lo <= hi, got [{lo}, {hi}]")
    full = box.full_bounds()
    return Region.from_bounds(
        [close_bounds(full[0], full[1], lo, hi, full[4], full[5])], box
    )
