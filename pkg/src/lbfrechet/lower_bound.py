"""Lower-bound Frechet decision for uncertain curves via region propagation.

Two walkers traverse the two curves; at any moment each is either parked at
a vertex realisation or committed to moving left or right along an edge.
For each grid index we keep four regions of admissible (x, y) coordinate
pairs, one per committed direction (U/D: the second walker moves up or
down while the first is parked, R/L: the first walker moves right or left
while the second is parked).  Regions grow by Minkowski sums with movement
cones and are trimmed by the slab of the next vertex and the band
|x - y| <= delta.  The decision is feasible iff a final region is
nonempty, and a realisation pair witnessing it can be read back off the
propagation by walking the recurrences in reverse.

Everything runs on integers: inputs are rescaled by the common denominator
once, and the final regions are scaled back.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .model import FiniteSet, PolyCurve, UncertainCurve
from .regions import (
    Bounds,
    ClipBox,
    Cone,
    Region,
    _mm_h_d,
    _mm_h_l,
    _mm_h_r,
    _mm_h_u,
    _mm_q_ld,
    _mm_q_lu,
    _mm_q_rd,
    _mm_q_ru,
    bounds_lexmin,
    close_bounds,
    cone_signs,
    meet_bounds,
    mink_bounds,
    normalize_pieces,
)

_TERM_ORDER = {"U": 0, "D": 1, "R": 2, "L": 3, "base": 4}


def clip_box_for(u: UncertainCurve, v: UncertainCurve, delta: Fraction) -> ClipBox:
    """The clipping square used by the propagation: generous enough that
    clipping never changes any decision or witness."""
    delta = Fraction(delta)
    pts = u.all_endpoints() + v.all_endpoints()
    lo = min(pts) - 2 * delta - 1
    hi = max(pts) + 2 * delta + 1
    return ClipBox(lo, hi)


def _hulled_intervals(curve: UncertainCurve, strict: bool) -> list[tuple[Fraction, Fraction]]:
    out = []
    warned = False
    for p in curve.points:
        lo, hi = p.span()
        if isinstance(p, FiniteSet) and len(p.xs) > 1:
            if strict:
                raise ValueError(
                    "finite-set vertices are not supported by the lower-bound "
                    "decision; rerun without strict mode to hull them"
                )
            if not warned:
                warnings.warn(
                    "finite-set vertex hulled to its spanning interval for the "
                    "lower-bound decision",
                    stacklevel=3,
                )
                warned = True
        out.append((lo, hi))
    return out


def _two(p: Bounds, q: Bounds) -> tuple:
    """Containment cleanup of an ordered pair of pieces."""
    if q[0] >= p[0] and q[1] <= p[1] and q[2] >= p[2] and q[3] <= p[3] and q[4] >= p[4] and q[5] <= p[5]:
        return (p,)
    if p[0] >= q[0] and p[1] <= q[1] and p[2] >= q[2] and p[3] <= q[3] and p[4] >= q[4] and p[5] <= q[5]:
        return (q,)
    return (p, q)


def _three(a: Bounds, b: Bounds, c: Bounds) -> tuple:
    """Containment cleanup of an ordered triple; falls back to the full
    merge only when all three pieces survive."""
    if b[0] >= a[0] and b[1] <= a[1] and b[2] >= a[2] and b[3] <= a[3] and b[4] >= a[4] and b[5] <= a[5]:
        return _two(a, c)
    if a[0] >= b[0] and a[1] <= b[1] and a[2] >= b[2] and a[3] <= b[3] and a[4] >= b[4] and a[5] <= b[5]:
        return _two(b, c)
    if (c[0] >= a[0] and c[1] <= a[1] and c[2] >= a[2] and c[3] <= a[3] and c[4] >= a[4] and c[5] <= a[5]) or (
        c[0] >= b[0] and c[1] <= b[1] and c[2] >= b[2] and c[3] <= b[3] and c[4] >= b[4] and c[5] <= b[5]
    ):
        return (a, b)
    a_in_c = a[0] >= c[0] and a[1] <= c[1] and a[2] >= c[2] and a[3] <= c[3] and a[4] >= c[4] and a[5] <= c[5]
    b_in_c = b[0] >= c[0] and b[1] <= c[1] and b[2] >= c[2] and b[3] <= c[3] and b[4] >= c[4] and b[5] <= c[5]
    if a_in_c:
        return (c,) if b_in_c else (b, c)
    if b_in_c:
        return (a, c)
    return normalize_pieces((a, b, c))


def _reduce(ps: list) -> tuple:
    """Cheap piece cleanup: dedupe and drop contained pieces; full merge
    only when more than two pieces survive."""
    k = len(ps)
    if k == 0:
        return ()
    if k == 1:
        return (ps[0],)
    if k == 2:
        return _two(ps[0], ps[1])
    if k == 3:
        return _three(ps[0], ps[1], ps[2])
    kept: list = []
    for p in ps:
        add = True
        for q in kept:
            if p[0] >= q[0] and p[1] <= q[1] and p[2] >= q[2] and p[3] <= q[3] and p[4] >= q[4] and p[5] <= q[5]:
                add = False
                break
        if add:
            kept = [q for q in kept if not (q[0] >= p[0] and q[1] <= p[1] and q[2] >= p[2] and q[3] <= p[3] and q[4] >= p[4] and q[5] <= p[5])]
            kept.append(p)
    if len(kept) > 2:
        return normalize_pieces(kept)
    return tuple(kept)


@dataclass
class CellRegions:
    """The four direction regions at one grid index, plus, per direction,
    which recurrence terms contributed which pieces."""

    u: Region
    d: Region
    r: Region
    l: Region
    provenance: dict


@dataclass
class LbTrace:
    m: int
    n: int
    scale: int
    delta_scaled: int
    box_scaled: tuple[int, int]
    box: ClipBox
    delta: Fraction
    hull_u: list[tuple[Fraction, Fraction]]
    hull_v: list[tuple[Fraction, Fraction]]
    i_pieces: list
    j_pieces: list
    x00: Optional[Bounds]
    tables: dict
    prov: dict
    final_parts: list
    feasible: bool

    def _region(self, pieces) -> Region:
        s = self.scale
        return Region.from_bounds(
            [tuple(Fraction(v, s) for v in p) for p in pieces], self.box
        )

    def cell(self, i: int, j: int) -> CellRegions:
        """Regions at grid index (i, j), 1-based.  U/D live at j <= n-1,
        R/L at i <= m-1; out-of-range directions come back empty."""
        regs = {}
        for kind in "UDRL":
            regs[kind] = self._region(self.tables[kind].get((i, j), ()))
        prov = {}
        for kind in "UDRL":
            terms = self.prov.get((kind, i, j), ())
            prov[kind] = tuple((name, self._region(pieces)) for name, pieces in terms)
        return CellRegions(regs["U"], regs["D"], regs["R"], regs["L"], prov)

    def dump_to(self, directory: str) -> None:
        """Write every stored region, one piece per line as a vertex list."""
        os.makedirs(directory, exist_ok=True)
        for kind in "UDRL":
            path = os.path.join(directory, f"{kind}.txt")
            with open(path, "w", encoding="utf-8") as fh:
                for (i, j), pieces in sorted(self.tables[kind].items()):
                    for line in self._region(pieces).dump_lines():
                        fh.write(f"{i} {j} : {line}\n")
        with open(os.path.join(directory, "final.txt"), "w", encoding="utf-8") as fh:
            for kind, i, j, pieces in self.final_parts:
                for line in self._region(pieces).dump_lines():
                    fh.write(f"{kind} {i} {j} : {line}\n")


@dataclass
class LbDecision:
    feasible: bool
    delta: Fraction
    final_region: Region
    trace: Optional[LbTrace] = None


def decide_lb(
    u: UncertainCurve,
    v: UncertainCurve,
    delta: Fraction,
    *,
    strict: bool = False,
    trace: bool = False,
) -> LbDecision:
    """Decide whether some realisation pair has Frechet distance <= delta."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    hull_u = _hulled_intervals(u, strict)
    hull_v = _hulled_intervals(v, strict)
    box = clip_box_for(u, v, delta)

    den = lcm(
        delta.denominator,
        box.lo.denominator,
        box.hi.denominator,
        *(x.denominator for lo, hi in hull_u for x in (lo, hi)),
        *(x.denominator for lo, hi in hull_v for x in (lo, hi)),
    )
    s = den
    d = int(delta * s)
    blo, bhi = int(box.lo * s), int(box.hi * s)
    dspan = bhi - blo
    su = [(int(lo * s), int(hi * s)) for lo, hi in hull_u]
    sv = [(int(lo * s), int(hi * s)) for lo, hi in hull_v]
    m, n = len(su), len(sv)

    # Vertex slabs already trimmed to the band and the box.
    ipieces = [None] + [close_bounds(lo, hi, blo, bhi, -d, d) for lo, hi in su]
    jpieces = [None] + [close_bounds(blo, bhi, lo, hi, -d, d) for lo, hi in sv]
    assert all(p is not None for p in ipieces[1:] + jpieces[1:])

    tables: dict = {k: {} for k in "UDRL"}
    prov: dict = {}
    keep = trace

    def store(kind, i, j, terms):
        pieces = _reduce([p for _, p in terms])
        if keep:
            pieces = normalize_pieces(pieces)
            tables[kind][(i, j)] = pieces
            grouped: dict = {}
            for name, p in terms:
                grouped.setdefault(name, []).append(p)
            prov[(kind, i, j)] = tuple(
                (name, normalize_pieces(ps)) for name, ps in grouped.items()
            )
        return pieces

    x00 = meet_bounds(ipieces[1], jpieces[1]) if ipieces[1] and jpieces[1] else None

    # Rays fused with the band trim: the band is the only bound the free
    # directions can violate.
    def ray_up(p):
        return close_bounds(p[0], p[1], p[2], bhi, p[4], d)

    def ray_down(p):
        return close_bounds(p[0], p[1], blo, p[3], -d, p[5])

    def ray_right(p):
        return close_bounds(p[0], bhi, p[2], p[3], -d, p[5])

    def ray_left(p):
        return close_bounds(blo, p[1], p[2], p[3], p[4], d)

    # --- base row: U/D along j at i = 1 ---------------------------------
    ucur: tuple = ()
    dcur: tuple = ()
    ucol = [()] * (n + 1)
    dcol = [()] * (n + 1)
    if n >= 2 and x00 is not None:
        piece = ray_up(x00)
        ucur = store("U", 1, 1, [("base", piece)] if piece else [])
        piece = ray_down(x00)
        dcur = store("D", 1, 1, [("base", piece)] if piece else [])
    elif n >= 2:
        ucur = store("U", 1, 1, [])
        dcur = store("D", 1, 1, [])
    ucol[1], dcol[1] = ucur, dcur
    for j in range(2, n):
        terms_u: list = []
        terms_d: list = []
        jj = jpieces[j]
        for name, src in (("U", ucur), ("D", dcur)):
            for p in src:
                w = meet_bounds(p, jj)
                if w is None:
                    continue
                q = ray_up(w)
                if q is not None:
                    terms_u.append((name, q))
                q = ray_down(w)
                if q is not None:
                    terms_d.append((name, q))
        ucur = store("U", 1, j, terms_u)
        dcur = store("D", 1, j, terms_d)
        ucol[j], dcol[j] = ucur, dcur

    # --- base column start: R/L at j = 1 --------------------------------
    def base_rl(i, rprev, lprev):
        terms_r: list = []
        terms_l: list = []
        if i == 1:
            if x00 is not None:
                q = ray_right(x00)
                if q is not None:
                    terms_r.append(("base", q))
                q = ray_left(x00)
                if q is not None:
                    terms_l.append(("base", q))
        else:
            ii = ipieces[i]
            for name, src in (("R", rprev), ("L", lprev)):
                for p in src:
                    w = meet_bounds(p, ii)
                    if w is None:
                        continue
                    q = ray_right(w)
                    if q is not None:
                        terms_r.append((name, q))
                    q = ray_left(w)
                    if q is not None:
                        terms_l.append((name, q))
        return store("R", i, 1, terms_r), store("L", i, 1, terms_l)

    # --- interior sweep --------------------------------------------------
    # Two bodies for the same recurrence: the keep branch records every
    # region and its contributing terms for tracing, the other branch runs
    # the fused kernels from the regions module and keeps only the rolling
    # row/column state.  Term order matches between the two so the
    # propagated pieces come out identical.
    rlast = llast = ()
    if m >= 2 and keep:
        rprev1: tuple = ()
        lprev1: tuple = ()
        for i in range(1, m):
            rcur, lcur = base_rl(i, rprev1, lprev1)
            rprev1, lprev1 = rcur, lcur
            inext = ipieces[i + 1]
            for j in range(1, n):
                uij, dij = ucol[j], dcol[j]
                jnext = jpieces[j + 1]
                # next-column R/L from this cell
                terms = []
                for p in rcur:
                    q = meet_bounds(mink_bounds(p, Cone.H_R, blo, bhi), jnext)
                    if q is not None:
                        terms.append(("R", q))
                for p in uij:
                    q = meet_bounds(mink_bounds(p, Cone.Q_RU, blo, bhi), jnext)
                    if q is not None:
                        terms.append(("U", q))
                for p in dij:
                    q = meet_bounds(mink_bounds(p, Cone.Q_RD, blo, bhi), jnext)
                    if q is not None:
                        terms.append(("D", q))
                new_r = store("R", i, j + 1, terms)
                terms = []
                for p in lcur:
                    q = meet_bounds(mink_bounds(p, Cone.H_L, blo, bhi), jnext)
                    if q is not None:
                        terms.append(("L", q))
                for p in uij:
                    q = meet_bounds(mink_bounds(p, Cone.Q_LU, blo, bhi), jnext)
                    if q is not None:
                        terms.append(("U", q))
                for p in dij:
                    q = meet_bounds(mink_bounds(p, Cone.Q_LD, blo, bhi), jnext)
                    if q is not None:
                        terms.append(("D", q))
                new_l = store("L", i, j + 1, terms)
                # next-row U/D from this cell
                terms = []
                for p in uij:
                    q = meet_bounds(mink_bounds(p, Cone.H_U, blo, bhi), inext)
                    if q is not None:
                        terms.append(("U", q))
                for p in rcur:
                    q = meet_bounds(mink_bounds(p, Cone.Q_RU, blo, bhi), inext)
                    if q is not None:
                        terms.append(("R", q))
                for p in lcur:
                    q = meet_bounds(mink_bounds(p, Cone.Q_LU, blo, bhi), inext)
                    if q is not None:
                        terms.append(("L", q))
                ucol[j] = store("U", i + 1, j, terms)
                terms = []
                for p in dij:
                    q = meet_bounds(mink_bounds(p, Cone.H_D, blo, bhi), inext)
                    if q is not None:
                        terms.append(("D", q))
                for p in rcur:
                    q = meet_bounds(mink_bounds(p, Cone.Q_RD, blo, bhi), inext)
                    if q is not None:
                        terms.append(("R", q))
                for p in lcur:
                    q = meet_bounds(mink_bounds(p, Cone.Q_LD, blo, bhi), inext)
                    if q is not None:
                        terms.append(("L", q))
                dcol[j] = store("D", i + 1, j, terms)
                rcur, lcur = new_r, new_l
            if i == m - 1:
                rlast, llast = rcur, lcur
    elif m >= 2:
        hr, hl, hu, hd = _mm_h_r, _mm_h_l, _mm_h_u, _mm_h_d
        qru, qlu, qrd, qld = _mm_q_ru, _mm_q_lu, _mm_q_rd, _mm_q_ld
        reduce_ = _reduce
        two = _two
        three = _three
        meet = meet_bounds

        def comb3(a, b, c):
            # containment cleanup of up-to-three kernel results, in order
            if a is None:
                if b is None:
                    return () if c is None else (c,)
                return (b,) if c is None else two(b, c)
            if b is None:
                return (a,) if c is None else two(a, c)
            if c is None:
                return two(a, b)
            return three(a, b, c)

        rprev1 = ()
        lprev1 = ()
        for i in range(1, m):
            # base column pieces at (i, 1)
            if i == 1:
                rcur = lcur = ()
                if x00 is not None:
                    q = ray_right(x00)
                    if q is not None:
                        rcur = (q,)
                    q = ray_left(x00)
                    if q is not None:
                        lcur = (q,)
            else:
                ii = ipieces[i]
                accr: list = []
                accl: list = []
                for src in (rprev1, lprev1):
                    for p in src:
                        w = meet(p, ii)
                        if w is None:
                            continue
                        q = ray_right(w)
                        if q is not None:
                            accr.append(q)
                        q = ray_left(w)
                        if q is not None:
                            accl.append(q)
                rcur = reduce_(accr)
                lcur = reduce_(accl)
            rprev1, lprev1 = rcur, lcur
            inext = ipieces[i + 1]
            for j in range(1, n):
                uij = ucol[j]
                dij = dcol[j]
                jnext = jpieces[j + 1]
                if len(rcur) == 1 and len(lcur) == 1 and len(uij) == 1 and len(dij) == 1:
                    # dominant shape: one piece per source, no lists needed
                    pr = rcur[0]
                    pl = lcur[0]
                    pu = uij[0]
                    pd = dij[0]
                    new_r = comb3(hr(pr, jnext), qru(pu, jnext), qrd(pd, jnext))
                    new_l = comb3(hl(pl, jnext), qlu(pu, jnext), qld(pd, jnext))
                    ucol[j] = comb3(hu(pu, inext), qru(pr, inext), qlu(pl, inext))
                    dcol[j] = comb3(hd(pd, inext), qrd(pr, inext), qld(pl, inext))
                    rcur, lcur = new_r, new_l
                    continue
                acc = []
                for p in rcur:
                    q = hr(p, jnext)
                    if q is not None:
                        acc.append(q)
                for p in uij:
                    q = qru(p, jnext)
                    if q is not None:
                        acc.append(q)
                for p in dij:
                    q = qrd(p, jnext)
                    if q is not None:
                        acc.append(q)
                new_r = reduce_(acc)
                acc = []
                for p in lcur:
                    q = hl(p, jnext)
                    if q is not None:
                        acc.append(q)
                for p in uij:
                    q = qlu(p, jnext)
                    if q is not None:
                        acc.append(q)
                for p in dij:
                    q = qld(p, jnext)
                    if q is not None:
                        acc.append(q)
                new_l = reduce_(acc)
                acc = []
                for p in uij:
                    q = hu(p, inext)
                    if q is not None:
                        acc.append(q)
                for p in rcur:
                    q = qru(p, inext)
                    if q is not None:
                        acc.append(q)
                for p in lcur:
                    q = qlu(p, inext)
                    if q is not None:
                        acc.append(q)
                ucol[j] = reduce_(acc)
                acc = []
                for p in dij:
                    q = hd(p, inext)
                    if q is not None:
                        acc.append(q)
                for p in rcur:
                    q = qrd(p, inext)
                    if q is not None:
                        acc.append(q)
                for p in lcur:
                    q = qld(p, inext)
                    if q is not None:
                        acc.append(q)
                dcol[j] = reduce_(acc)
                rcur, lcur = new_r, new_l
            if i == m - 1:
                rlast, llast = rcur, lcur

    # --- final check ------------------------------------------------------
    final_parts: list = []
    if m == 1 and n == 1:
        if x00 is not None:
            final_parts.append(("X", 1, 1, (x00,)))
    else:
        if m >= 2:
            im = ipieces[m]
            for kind, src in (("R", rlast), ("L", llast)):
                got = tuple(
                    q for q in (meet_bounds(p, im) for p in src) if q is not None
                )
                if got:
                    final_parts.append((kind, m - 1, n, got))
        if n >= 2:
            jn = jpieces[n]
            for kind, src in (("U", ucol[n - 1]), ("D", dcol[n - 1])):
                got = tuple(
                    q for q in (meet_bounds(p, jn) for p in src) if q is not None
                )
                if got:
                    final_parts.append((kind, m, n - 1, got))

    feasible = bool(final_parts)
    final_region = Region.from_bounds(
        [tuple(Fraction(x, s) for x in p) for _, _, _, pieces in final_parts for p in pieces],
        box,
    )
    tr = None
    if trace:
        tr = LbTrace(
            m=m,
            n=n,
            scale=s,
            delta_scaled=d,
            box_scaled=(blo, bhi),
            box=box,
            delta=delta,
            hull_u=hull_u,
            hull_v=hull_v,
            i_pieces=ipieces,
            j_pieces=jpieces,
            x00=x00,
            tables=tables,
            prov=prov,
            final_parts=final_parts,
            feasible=feasible,
        )
    return LbDecision(feasible=feasible, delta=delta, final_region=final_region, trace=tr)


def _preimage(px: int, py: int, cone: Cone, blo: int, bhi: int) -> Bounds:
    sx, sy = cone_signs(cone)
    if sx == 1:
        xlo, xhi = blo, px
    elif sx == -1:
        xlo, xhi = px, bhi
    elif sx == 0:
        xlo, xhi = px, px
    else:
        xlo, xhi = blo, bhi
    if sy == 1:
        ylo, yhi = blo, py
    elif sy == -1:
        ylo, yhi = py, bhi
    elif sy == 0:
        ylo, yhi = py, py
    else:
        ylo, yhi = blo, bhi
    dspan = bhi - blo
    out = close_bounds(xlo, xhi, ylo, yhi, -dspan, dspan)
    assert out is not None
    return out


def extract_witness(trace: LbTrace) -> Optional[tuple[PolyCurve, PolyCurve]]:
    """Read a witness realisation pair off a feasible traced decision.

    Walks the recurrences backward from the lexicographically smallest
    final point, committing the smallest feasible predecessor point at
    each step.  Returns None on infeasible traces.
    """
    if not trace.feasible:
        return None
    m, n = trace.m, trace.n
    blo, bhi = trace.box_scaled
    tables = trace.tables

    best = None
    for kind, i, j, pieces in trace.final_parts:
        for p in pieces:
            cand = (bounds_lexmin(p), _TERM_ORDER.get(kind, 9), kind, i, j)
            if best is None or cand < best:
                best = cand
    (px, py), _, kind, i, j = best
    pu: list = [None] * (m + 1)
    pv: list = [None] * (n + 1)
    if kind == "X":
        pu[1], pv[1] = px, py
    else:
        pu[m], pv[n] = px, py
        preds_of = {
            "U": (("U", Cone.H_U), ("R", Cone.Q_RU), ("L", Cone.Q_LU)),
            "D": (("D", Cone.H_D), ("R", Cone.Q_RD), ("L", Cone.Q_LD)),
            "R": (("R", Cone.H_R), ("U", Cone.Q_RU), ("D", Cone.Q_RD)),
            "L": (("L", Cone.H_L), ("U", Cone.Q_LU), ("D", Cone.Q_LD)),
        }
        while True:
            vertical = kind in ("U", "D")
            if vertical:
                pu[i] = px
            else:
                pv[j] = py
            ray = {"U": Cone.S_U, "D": Cone.S_D, "R": Cone.S_R, "L": Cone.S_L}[kind]
            if vertical and i >= 2:
                cands = []
                for order, (pk, cone) in enumerate(preds_of[kind]):
                    pre = _preimage(px, py, cone, blo, bhi)
                    for piece in tables[pk].get((i - 1, j), ()):
                        q = meet_bounds(pre, piece)
                        if q is not None:
                            cands.append((bounds_lexmin(q), order, pk))
                assert cands, "empty predecessor set in witness backtrack"
                (px, py), _, kind = min(cands)
                i -= 1
            elif not vertical and j >= 2:
                cands = []
                for order, (pk, cone) in enumerate(preds_of[kind]):
                    pre = _preimage(px, py, cone, blo, bhi)
                    for piece in tables[pk].get((i, j - 1), ()):
                        q = meet_bounds(pre, piece)
                        if q is not None:
                            cands.append((bounds_lexmin(q), order, pk))
                assert cands, "empty predecessor set in witness backtrack"
                (px, py), _, kind = min(cands)
                j -= 1
            elif vertical and j >= 2:
                # base row: un-ray through J_j, pinning the crossing height
                pre = _preimage(px, py, ray, blo, bhi)
                jj = trace.j_pieces[j]
                cands = []
                for order, pk in enumerate(("U", "D")):
                    for piece in tables[pk].get((1, j - 1), ()):
                        w = meet_bounds(piece, jj)
                        if w is None:
                            continue
                        q = meet_bounds(pre, w)
                        if q is not None:
                            cands.append((bounds_lexmin(q), order, pk))
                assert cands, "empty predecessor set in witness backtrack"
                (px, py), _, kind = min(cands)
                pv[j] = py
                j -= 1
            elif not vertical and i >= 2:
                pre = _preimage(px, py, ray, blo, bhi)
                ii = trace.i_pieces[i]
                cands = []
                for order, pk in enumerate(("R", "L")):
                    for piece in tables[pk].get((i - 1, 1), ()):
                        w = meet_bounds(piece, ii)
                        if w is None:
                            continue
                        q = meet_bounds(pre, w)
                        if q is not None:
                            cands.append((bounds_lexmin(q), order, pk))
                assert cands, "empty predecessor set in witness backtrack"
                (px, py), _, kind = min(cands)
                pu[i] = px
                i -= 1
            else:
                # i == j == 1: un-ray straight into the shared base piece
                pre = _preimage(px, py, ray, blo, bhi)
                q = meet_bounds(pre, trace.x00)
                assert q is not None, "empty predecessor set in witness backtrack"
                qx, qy = bounds_lexmin(q)
                pu[1], pv[1] = qx, qy
                break

    assert all(x is not None for x in pu[1:]), "witness left a vertex unpinned"
    assert all(y is not None for y in pv[1:]), "witness left a vertex unpinned"
    s = trace.scale
    wu = tuple(Fraction(x, s) for x in pu[1:])
    wv = tuple(Fraction(y, s) for y in pv[1:])
    for val, (lo, hi) in zip(wu, trace.hull_u):
        assert lo <= val <= hi, "witness outside vertex region"
    for val, (lo, hi) in zip(wv, trace.hull_v):
        assert lo <= val <= hi, "witness outside vertex region"
    from .precise import frechet_decide

    assert frechet_decide(wu, wv, trace.delta), "witness fails the precise decision"
    return wu, wv


def compute_lb(
    u: UncertainCurve,
    v: UncertainCurve,
    tol: Fraction,
    *,
    strict: bool = False,
) -> Fraction:
    """Binary-search the smallest feasible delta to within tol.

    Returns a delta_hat with decide_lb(delta_hat) feasible and
    decide_lb(delta_hat - tol) infeasible (deltas <= 0 count as infeasible).
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    ulo, uhi = u.span()
    vlo, vhi = v.span()
    span = max(uhi - vlo, vhi - ulo, Fraction(0))
    if span == 0:
        return Fraction(0)
    lo = Fraction(0)
    hi = max(span, tol)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if decide_lb(u, v, mid, strict=strict).feasible:
            hi = mid
        else:
            lo = mid
    return hi
