"""Plane primitives over a dual-mode scalar.

A scalar is either a Python ``float`` (approximate mode) or an exact rational
(``fractions.Fraction`` or ``gmpy2.mpq``; exact mode). Plain ``int`` values are representable in
both modes and are accepted anywhere. Every geometric routine here is written
once against that convention; mixing ``float`` and ``Fraction`` inside one
call raises :class:`ModeMixError` instead of silently degrading to floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence, Union

from quadlab import tolerances as tol
from quadlab.errors import ModeMixError, NonPythagorean, ParallelLines

Scalar = Union[float, Fraction, int]

EXACT = "exact"
APPROX = "approx"


def scalar_mode(*values: Scalar) -> str | None:
    """Return the common mode of ``values``; ``None`` if all are ints."""
    mode = None
    for v in values:
        t = type(v)
        if t is float:
            this = APPROX
        elif t is int:
            continue
        elif t is bool:
            raise TypeError("booleans are not scalars")
        elif isinstance(v, Rational):
            this = EXACT
        elif isinstance(v, float):
            this = APPROX
        else:
            raise TypeError(f"unsupported scalar type {t.__name__}")
        if mode is None:
            mode = this
        elif mode != this:
            raise ModeMixError("exact and approximate scalars mixed")
    return mode


def is_exact(v: Scalar) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def rational_sqrt(q: Scalar) -> Fraction | None:
    """Exact square root of a non-negative rational, or ``None`` if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def parse_scalar(text: Union[str, int, float]) -> Scalar:
    """Parse ``"p/q"`` (or an integer literal) as exact, anything else as float."""
    if isinstance(text, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(text, (int, float, Rational)):
        return text
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        q = Fraction(int(num), int(den))
        if q.denominator <= 0:
            raise ValueError(f"bad rational {text!r}")
        return q
    try:
        return Fraction(int(s))
    except ValueError:
        return float(s)


def format_scalar(v: Scalar) -> Union[str, float]:
    """Serialize exact values as ``"p/q"`` in lowest terms (``"p"`` for integers); floats pass through."""
    if isinstance(v, Rational) and not isinstance(v, bool):
        q = Fraction(v)
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return float(v)


class Point2(NamedTuple):
    x: Scalar
    y: Scalar


def sub(p: Point2, q: Point2) -> Point2:
    return Point2(p[0] - q[0], p[1] - q[1])


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return u[0] * v[0] + u[1] * v[1]


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return u[0] * v[1] - u[1] * v[0]


def exact_unit(dx: Scalar, dy: Scalar) -> tuple[Fraction, Fraction]:
    """Unit vector along (dx, dy) in exact arithmetic.

    Only Pythagorean directions (rational norm) have one; anything else
    raises :class:`NonPythagorean`.
    """
    dx, dy = Fraction(dx), Fraction(dy)
    norm = rational_sqrt(dx * dx + dy * dy)
    if norm is None or norm == 0:
        raise NonPythagorean(f"direction ({dx}, {dy}) has no rational norm")
    return dx / norm, dy / norm


@dataclass(frozen=True)
class Line:
    """A line through ``anchor`` along ``direction``.

    Approximate-mode directions are normalized on construction; exact-mode
    directions are kept as given (see :meth:`unit`).
    """

    anchor: Point2
    direction: tuple[Scalar, Scalar]

    def __post_init__(self):
        dx, dy = self.direction
        mode = scalar_mode(self.anchor[0], self.anchor[1], dx, dy)
        if dx == 0 and dy == 0:
            raise ValueError("line direction must be nonzero")
        object.__setattr__(self, "anchor", Point2(*self.anchor))
        if mode == APPROX:
            n = math.hypot(dx, dy)
            object.__setattr__(self, "direction", (dx / n, dy / n))

    @classmethod
    def through(cls, anchor: Sequence[Scalar], slope: Scalar) -> "Line":
        one = 1.0 if isinstance(slope, float) else 1
        return cls(Point2(*anchor), (one, slope))

    @property
    def exact(self) -> bool:
        return scalar_mode(*self.anchor, *self.direction) != APPROX

    def unit(self) -> tuple[Scalar, Scalar]:
        if self.exact:
            return exact_unit(*self.direction)
        return self.direction


def line_intersection(l1: Line, l2: Line, parallel_tol: float = tol.PARALLEL_TOL) -> Point2:
    """Intersection point of two non-parallel lines."""
    scalar_mode(*l1.anchor, *l1.direction, *l2.anchor, *l2.direction)
    d1, d2 = l1.direction, l2.direction
    det = cross(d1, d2)
    if l1.exact and l2.exact:
        if det == 0:
            raise ParallelLines("lines are parallel")
    else:
        scale = math.hypot(*d1) * math.hypot(*d2)
        if abs(det) <= parallel_tol * scale:
            raise ParallelLines(f"normalized cross product {det / scale:.3e} below tolerance")
    t = cross(sub(l2.anchor, l1.anchor), d2) / det
    return Point2(l1.anchor[0] + t * d1[0], l1.anchor[1] + t * d1[1])


def signed_distance(p: Point2, q: Point2, u: Sequence[Scalar]) -> Scalar:
    """Signed distance ``(p - q) . u`` between two points on a line parallel to ``u``."""
    mode = scalar_mode(*p, *q, *u)
    if __debug__:
        n2 = dot(u, u)
        if mode == APPROX:
            assert abs(n2 - 1.0) <= 10 * tol.UNIT_TOL, "u must be a unit vector"
        else:
            assert n2 == 1, "u must be a unit vector"
    return dot(sub(p, q), u)


def signed_area(poly: Sequence[Sequence[Scalar]]) -> Scalar:
    """Winding-weighted area of a closed polygon (shoelace formula).

    Positive for counterclockwise traversal; self-intersecting polygons get
    the signed sum over their regions.
    """
    n = len(poly)
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    scalar_mode(*(c for p in poly for c in p))
    acc = 0
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return acc / 2


def is_convex(poly: Sequence[Sequence[Scalar]]) -> bool:
    """True when every turn of the closed polygon has the same nonzero sign."""
    n = len(poly)
    signs = set()
    for i in range(n):
        e0 = sub(poly[(i + 1) % n], poly[i])
        e1 = sub(poly[(i + 2) % n], poly[(i + 1) % n])
        c = cross(e0, e1)
        if c == 0:
            return False
        signs.add(c > 0)
    return len(signs) == 1


def rotate(p: Sequence[float], angle: float) -> Point2:
    c, s = math.cos(angle), math.sin(angle)
    return Point2(c * p[0] - s * p[1], s * p[0] + c * p[1])


def close(a: float, b: float, rel: float = tol.REL_TOL, abs_: float = tol.ABS_TOL) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=abs_)


@dataclass(frozen=True)
class PlanarQuad:
    """Four vertices in traversal order; consecutive vertices must differ."""

    vertices: tuple[Point2, Point2, Point2, Point2]

    def __post_init__(self):
        vs = tuple(Point2(*v) for v in self.vertices)
        if len(vs) != 4:
            raise ValueError("a quad has exactly four vertices")
        for i in range(4):
            if vs[i] == vs[(i + 1) % 4]:
                raise ValueError(f"vertices {i} and {(i + 1) % 4} coincide")
        object.__setattr__(self, "vertices", vs)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def __len__(self):
        return 4
