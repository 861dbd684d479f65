"""Core data model: exact scalars, uncertain points, curves, realisations.

A polygonal curve on the line is just a nonempty tuple of rationals, one per
vertex; consecutive vertices are joined by linear interpolation.  An
uncertain curve replaces each vertex with a region of candidate positions:
a precise point, a closed interval, or a finite set.  A realisation picks
one position inside every vertex region.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Fraction

PolyCurve = tuple[Fraction, ...]


class CurveFormatError(ValueError):
    """Raised when curve JSON or a scalar literal cannot be parsed."""


_SCALAR_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$|^[+-]?\d+/\d+$")


def parse_scalar(text: str) -> Fraction:
    """Parse a decimal string like "0.5" or a ratio like "4/5" exactly."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise CurveFormatError(f"scalar must be a string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    t = text.strip()
    if not _SCALAR_RE.match(t):
        raise CurveFormatError(f"not a decimal or ratio literal: {text!r}")
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise CurveFormatError(f"bad scalar {text!r}: {exc}") from exc


def format_scalar(value: Fraction) -> str:
    """Format exactly: plain decimal when the denominator is 2^a 5^b, else p/q."""
    value = Fraction(value)
    den = value.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    if value.denominator == 1:
        return str(value.numerator)
    shift = max(twos, fives)
    scaled = value.numerator * 10**shift // value.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(shift + 1, "0")
    return f"{sign}{digits[:-shift]}.{digits[-shift:]}"


@dataclass(frozen=True)
class Precise:
    x: Fraction

    def contains(self, value: Fraction) -> bool:
        return value == self.x

    def endpoints(self) -> tuple[Fraction, ...]:
        return (self.x,)

    def span(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.x)

    @property
    def is_precise(self) -> bool:
        return True


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def endpoints(self) -> tuple[Fraction, ...]:
        if self.lo == self.hi:
            return (self.lo,)
        return (self.lo, self.hi)

    def span(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def is_precise(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class FiniteSet:
    xs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.xs:
            raise ValueError("finite-set vertex needs at least one position")
        if any(self.xs[k] >= self.xs[k + 1] for k in range(len(self.xs) - 1)):
            raise ValueError("finite-set positions must be strictly increasing")

    def contains(self, value: Fraction) -> bool:
        return value in self.xs

    def endpoints(self) -> tuple[Fraction, ...]:
        return self.xs

    def span(self) -> tuple[Fraction, Fraction]:
        return (self.xs[0], self.xs[-1])

    @property
    def is_precise(self) -> bool:
        return len(self.xs) == 1


UncertainPoint = Union[Precise, Interval, FiniteSet]


def make_set(xs: Iterable[Fraction]) -> UncertainPoint:
    """Build a finite-set vertex, collapsing singletons to a precise point."""
    vals = tuple(sorted(set(Fraction(x) for x in xs)))
    if len(vals) == 1:
        return Precise(vals[0])
    return FiniteSet(vals)


def make_interval(lo: Fraction, hi: Fraction) -> UncertainPoint:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return Precise(lo)
    return Interval(lo, hi)


@dataclass(frozen=True)
class UncertainCurve:
    points: tuple[UncertainPoint, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("curve needs at least one vertex")

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, idx: int) -> UncertainPoint:
        return self.points[idx]

    def reverse(self) -> "UncertainCurve":
        return UncertainCurve(self.points[::-1], self.name)

    def span(self) -> tuple[Fraction, Fraction]:
        los, his = zip(*(p.span() for p in self.points))
        return (min(los), max(his))

    def all_endpoints(self) -> list[Fraction]:
        out: list[Fraction] = []
        for p in self.points:
            out.extend(p.endpoints())
        return out

    @property
    def is_precise(self) -> bool:
        return all(p.is_precise for p in self.points)

    def as_precise(self) -> PolyCurve:
        """The underlying polygonal curve, or raise if any vertex is uncertain."""
        if not self.is_precise:
            raise ValueError("curve has uncertain vertices")
        return tuple(p.span()[0] for p in self.points)


def precise_curve(values: Iterable[Fraction], name: str = "") -> UncertainCurve:
    return UncertainCurve(tuple(Precise(Fraction(v)) for v in values), name)


def is_realisation(curve: Sequence[Fraction], uncertain: UncertainCurve) -> bool:
    """True iff curve picks one admissible position per vertex of uncertain."""
    if len(curve) != len(uncertain):
        return False
    return all(p.contains(Fraction(x)) for x, p in zip(curve, uncertain.points))


def reverse(curve: Sequence[Fraction]) -> PolyCurve:
    return tuple(curve)[::-1]


def image(curve: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """The interval swept by the curve: (min vertex, max vertex)."""
    return (min(curve), max(curve))


def concat(a: Sequence[Fraction], b: Sequence[Fraction]) -> PolyCurve:
    return tuple(a) + tuple(b)


def subcurve(curve: Sequence[Fraction], i: int, j: int) -> PolyCurve:
    """Vertices i..j inclusive, 1-based."""
    n = len(curve)
    if not (1 <= i <= j <= n):
        raise IndexError(f"subcurve range [{i}, {j}] out of bounds for {n} vertices")
    return tuple(curve)[i - 1 : j]


def growing_curve(curve: Sequence[Fraction]) -> PolyCurve:
    """Reduce a curve to its growing core.

    First drop every vertex already inside the image of the strict prefix,
    then drop interior vertices of the survivor sequence that are not local
    extrema.  The result alternates between strictly increasing maxima and
    strictly decreasing minima, and shares first vertex, image growth, and
    weak-Frechet behaviour with the input.
    """
    pts = [Fraction(x) for x in curve]
    kept = [pts[0]]
    lo = hi = pts[0]
    for x in pts[1:]:
        if x < lo or x > hi:
            kept.append(x)
            lo = min(lo, x)
            hi = max(hi, x)
    if len(kept) <= 2:
        return tuple(kept)
    out = [kept[0]]
    for k in range(1, len(kept) - 1):
        before, here, after = kept[k - 1], kept[k], kept[k + 1]
        if (here > before) != (after > here):
            out.append(here)
    out.append(kept[-1])
    return tuple(out)


# ---------------------------------------------------------------------------
# JSON wire format


def _point_from_json(obj: object) -> UncertainPoint:
    if not isinstance(obj, dict):
        raise CurveFormatError(f"vertex must be an object, got {obj!r}")
    kind = obj.get("type")
    if kind == "precise":
        return Precise(parse_scalar(obj.get("x")))
    if kind == "interval":
        lo = parse_scalar(obj.get("lo"))
        hi = parse_scalar(obj.get("hi"))
        if lo > hi:
            raise CurveFormatError(f"interval with lo > hi: {obj!r}")
        return make_interval(lo, hi)
    if kind == "set":
        xs = obj.get("xs")
        if not isinstance(xs, list) or not xs:
            raise CurveFormatError(f"set vertex needs a nonempty xs list: {obj!r}")
        return make_set(parse_scalar(x) for x in xs)
    raise CurveFormatError(f"unknown vertex type {kind!r}")


def _point_to_json(p: UncertainPoint) -> dict:
    if isinstance(p, Precise):
        return {"type": "precise", "x": format_scalar(p.x)}
    if isinstance(p, Interval):
        return {"type": "interval", "lo": format_scalar(p.lo), "hi": format_scalar(p.hi)}
    return {"type": "set", "xs": [format_scalar(x) for x in p.xs]}


def curve_from_json(data: object) -> UncertainCurve:
    """Build a curve from parsed JSON (or a JSON string)."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise CurveFormatError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CurveFormatError("curve JSON must be an object")
    if data.get("dimension", 1) != 1:
        raise CurveFormatError(f"only 1D curves are supported, got dimension {data.get('dimension')!r}")
    pts = data.get("points")
    if not isinstance(pts, list) or not pts:
        raise CurveFormatError("curve needs a nonempty points list")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise CurveFormatError("curve name must be a string")
    return UncertainCurve(tuple(_point_from_json(p) for p in pts), name)


def curve_to_json(curve: UncertainCurve) -> dict:
    out: dict = {"dimension": 1}
    if curve.name:
        out["name"] = curve.name
    out["points"] = [_point_to_json(p) for p in curve.points]
    return out


def load_curve(path: str) -> UncertainCurve:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CurveFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CurveFormatError(f"{path}: bad JSON: {exc}") from exc
    return curve_from_json(data)


def dump_curve(curve: UncertainCurve, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(curve_to_json(curve), fh, indent=2)
        fh.write("\n")
