"""Cyclic quadrilaterals in arc coordinates.

A :class:`CircleQuad` is stored as a circle diameter, a base angle and four
arcs between consecutive vertices. Angles are held internally as exact
rationals (``gmpy2.mpq``) in units of pi (``arcs_pi``), so sums and differences of arcs are
exact; radians are produced only when a trigonometric value is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from gmpy2 import mpq

from quadlab import tolerances as tol
from quadlab.errors import BadArcs, BadDiameter, NotCyclic
from quadlab.geom_core import (
    Point2,
    PlanarQuad,
    Scalar,
    format_scalar,
    parse_scalar,
    signed_area,
)

PI = math.pi
TWO = mpq(2)
HALF = mpq(1, 2)
ZERO = mpq(0)
_GRID = 1 << 52


def to_pi_units(radians: Union[float, mpq, int]) -> mpq:
    """Convert a radian value to an exact multiple of pi.

    Values within a few ulps of a small-denominator fraction of pi snap to it,
    so ``math.pi / 6`` becomes exactly ``1/6``.
    """
    if isinstance(radians, (mpq, int)) and radians == 0:
        return mpq(0)
    x = float(radians) / PI
    # gmpy2's own limit_denominator can return a corrupted value; go via Fraction
    snapped = Fraction(x).limit_denominator(10_000)
    if abs(float(snapped) - x) <= 4 * math.ulp(max(abs(x), 1.0)):
        return mpq(snapped.numerator, snapped.denominator)
    return mpq(x)


def to_radians(pi_units: mpq) -> float:
    return float(pi_units) * PI


@dataclass(frozen=True)
class CircleQuad:
    """A (possibly degenerate) cyclic quad on a circle centred at the origin.

    Vertex ``i`` sits at angle ``theta0 + sum(arcs[:i])``. At most one arc may
    be zero; such a quad is a triangle with one marked point.
    """

    D: Scalar
    theta0_pi: mpq
    arcs_pi: tuple[mpq, mpq, mpq, mpq]

    def __post_init__(self):
        if not self.D > 0:
            raise BadDiameter(f"diameter must be positive, got {self.D}")
        arcs = tuple(mpq(a) for a in self.arcs_pi)
        if len(arcs) != 4:
            raise BadArcs("need exactly four arcs")
        if any(a < 0 for a in arcs):
            raise BadArcs(f"negative arc in {[float(a) for a in arcs]}")
        if sum(arcs) != TWO:
            raise BadArcs("arcs must sum to 2*pi exactly")
        if sum(1 for a in arcs if a == 0) > 1:
            raise BadArcs("at most one arc may be zero")
        object.__setattr__(self, "arcs_pi", arcs)
        object.__setattr__(self, "theta0_pi", mpq(self.theta0_pi) % 2)

    @property
    def arcs(self) -> tuple[float, float, float, float]:
        return tuple(to_radians(a) for a in self.arcs_pi)

    @property
    def theta0(self) -> float:
        return to_radians(self.theta0_pi)

    @property
    def is_marked_triangle(self) -> bool:
        return any(a == 0 for a in self.arcs_pi)

    def with_arcs(self, arcs_pi: Sequence[mpq], D: Optional[Scalar] = None) -> "CircleQuad":
        return CircleQuad(self.D if D is None else D, self.theta0_pi, tuple(arcs_pi))

    def to_json(self) -> dict:
        return {
            "D": format_scalar(self.D),
            "theta0": self.theta0,
            "arcs": list(self.arcs),
            "arcs_pi": [format_scalar(a) for a in self.arcs_pi],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CircleQuad":
        D = parse_scalar(obj["D"])
        if "arcs_pi" in obj:
            arcs = tuple(mpq(parse_scalar(a)) for a in obj["arcs_pi"])
            theta0_pi = to_pi_units(obj.get("theta0", 0.0))
            return cls(D, theta0_pi, arcs)
        return make_quad(D, obj.get("theta0", 0.0), obj["arcs"])


@dataclass(frozen=True)
class QuadMetrics:
    sides: tuple[float, float, float, float]
    s: float
    A: float
    B2: float
    C: Optional[float]  # None when B2 == 0
    diagonals: tuple[float, float]
    diag_angle: float
    phi: float


def make_quad(D: Scalar, theta0: float, arcs: Sequence[float]) -> CircleQuad:
    """Build a quad from radian arcs, renormalizing the largest arc exactly.

    >>> make_quad(2.0, 0.0, [math.pi / 2] * 4).arcs_pi
    (mpq(1, 2), mpq(1, 2), mpq(1, 2), mpq(1, 2))
    """
    if not D > 0:
        raise BadDiameter(f"diameter must be positive, got {D}")
    if len(arcs) != 4:
        raise BadArcs("need exactly four arcs")
    if any(a < 0 for a in arcs):
        raise BadArcs(f"negative arc in {list(arcs)}")
    if abs(sum(float(a) for a in arcs) - 2 * PI) > tol.ARC_SUM_TOL:
        raise BadArcs(f"arcs sum to {sum(arcs)!r}, not 2*pi")
    pi_arcs = [to_pi_units(a) for a in arcs]
    big = max(range(4), key=lambda i: pi_arcs[i])
    pi_arcs[big] = TWO - sum(a for i, a in enumerate(pi_arcs) if i != big)
    return CircleQuad(D, to_pi_units(theta0), tuple(pi_arcs))


def quad_from_pi(D: Scalar, arcs_pi: Sequence, theta0_pi=0) -> CircleQuad:
    """Exact constructor: arcs and base angle given as rational multiples of pi."""
    return CircleQuad(D, mpq(theta0_pi), tuple(mpq(a) for a in arcs_pi))


def vertex_angles_pi(q: CircleQuad) -> tuple[mpq, ...]:
    out = []
    theta = q.theta0_pi
    for a in q.arcs_pi:
        out.append(theta % 2)
        theta += a
    return tuple(out)


def vertices(q: CircleQuad) -> tuple[Point2, Point2, Point2, Point2]:
    r = float(q.D) / 2
    pts = []
    for th in vertex_angles_pi(q):
        t = to_radians(th)
        pts.append(Point2(r * math.cos(t), r * math.sin(t)))
    return tuple(pts)


def chord(D: float, arc_pi: mpq) -> float:
    """Length of the chord subtending ``arc_pi`` on a circle of diameter ``D``."""
    return D * math.sin(to_radians(arc_pi) / 2)


def metrics(q: CircleQuad) -> QuadMetrics:
    D = float(q.D)
    s1, s2, s3, s4 = q.arcs_pi
    sides = tuple(chord(D, s) for s in q.arcs_pi)
    a, b, c, d = sides
    s = (a + b + c + d) / 2
    A = signed_area(vertices(q))
    B2 = (s - a) * (s - b) * (s - c) * (s - d)
    C = A * A / B2 if B2 != 0 else None
    d1, d2 = chord(D, s1 + s2), chord(D, s2 + s3)
    return QuadMetrics(
        sides=sides,
        s=s,
        A=A,
        B2=B2,
        C=C,
        diagonals=(d1, d2),
        diag_angle=to_radians((s1 + s3) / 2),
        phi=(d1 * d1 + d2 * d2) / (D * D),
    )


def interior_angles_pi(q: CircleQuad) -> tuple[mpq, mpq, mpq, mpq]:
    """Interior angles at P1..P4 as exact multiples of pi (inscribed-angle theorem)."""
    s1, s2, s3, s4 = q.arcs_pi
    return ((s2 + s3) / 2, (s3 + s4) / 2, (s4 + s1) / 2, (s1 + s2) / 2)


def interior_angles(q: CircleQuad) -> tuple[float, float, float, float]:
    return tuple(to_radians(a) for a in interior_angles_pi(q))


def diag_angle_pi(q: CircleQuad) -> mpq:
    return (q.arcs_pi[0] + q.arcs_pi[2]) / 2


def is_square(q: CircleQuad, tol_: float = tol.SQUARE_TOL) -> bool:
    return max(abs(to_radians(a - HALF)) for a in q.arcs_pi) <= tol_


def random_convex(
    seed: Union[int, np.random.Generator],
    min_arc: float = 0.05,
) -> CircleQuad:
    """Seeded random convex cyclic quad.

    Arcs are ``min_arc`` plus uniform spacings of the remaining circle, so
    every arc is at least ``min_arc``; D is uniform on [0.5, 2] and the base
    angle uniform on [0, 2*pi). ``seed`` may also be a numpy Generator, which
    is advanced in place.
    """
    if not 0 < min_arc < PI / 2:
        raise ValueError("min_arc must lie in (0, pi/2)")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    draws = [int(k) for k in rng.integers(0, _GRID, size=5, endpoint=True)]
    cuts = sorted(draws[:3])
    theta0 = mpq(2 * draws[3], _GRID)
    D = 0.5 + 1.5 * draws[4] / _GRID
    m = mpq(min_arc / PI)
    while to_radians(m) < min_arc:
        m = mpq(math.nextafter(float(m), 2.0))
    free = TWO - 4 * m
    bounds = [0, *cuts, _GRID]
    arcs = tuple(m + free * mpq(bounds[i + 1] - bounds[i], _GRID) for i in range(4))
    return CircleQuad(D, theta0, arcs)


def circumscribe(pq: PlanarQuad, tol_: float = tol.CYCLIC_TOL) -> CircleQuad:
    """Recover the arc representation of a planar cyclic quad.

    Clockwise inputs are mirrored first, so the result is congruent (possibly
    by a reflection) to ``pq`` with the same vertex labels.
    """
    pts = [Point2(float(p[0]), float(p[1])) for p in pq]
    if signed_area(pts) < 0:
        pts = [Point2(x, -y) for x, y in pts]
    (ax, ay), (bx, by), (cx, cy) = pts[0], pts[1], pts[2]
    det = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if det == 0:
        raise NotCyclic("first three vertices are collinear")
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ox = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / det
    oy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / det
    radii = [math.hypot(x - ox, y - oy) for x, y in pts]
    R = radii[0]
    if any(abs(r - R) > tol_ * max(R, 1.0) for r in radii):
        raise NotCyclic("vertices are not concyclic")
    angles = [math.atan2(y - oy, x - ox) for x, y in pts]
    arcs = [(angles[(i + 1) % 4] - angles[i]) % (2 * PI) for i in range(4)]
    if abs(sum(arcs) - 2 * PI) > tol_:
        raise NotCyclic("vertices do not wind once around the circle")
    return make_quad(2 * R, angles[0], arcs)


def metrics_batch(arcs: np.ndarray, D: np.ndarray, theta0: np.ndarray | None = None) -> dict:
    """Vectorized metrics for ``N`` quads given radian arcs of shape ``(N, 4)``.

    Used by sweeps; mirrors :func:`metrics` formula for formula.
    """
    arcs = np.asarray(arcs, dtype=float)
    D = np.broadcast_to(np.asarray(D, dtype=float), arcs.shape[:1])
    theta0 = np.zeros(len(arcs)) if theta0 is None else np.asarray(theta0, dtype=float)
    th = theta0[:, None] + np.concatenate([np.zeros((len(arcs), 1)), np.cumsum(arcs[:, :3], axis=1)], axis=1)
    X, Y = (D / 2)[:, None] * np.cos(th), (D / 2)[:, None] * np.sin(th)
    A = 0.5 * np.sum(X * np.roll(Y, -1, axis=1) - np.roll(X, -1, axis=1) * Y, axis=1)
    sides = D[:, None] * np.sin(arcs / 2)
    s = sides.sum(axis=1) / 2
    B2 = np.prod(s[:, None] - sides, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        C = np.where(B2 != 0, A * A / B2, np.nan)
    d1 = D * np.sin((arcs[:, 0] + arcs[:, 1]) / 2)
    d2 = D * np.sin((arcs[:, 1] + arcs[:, 2]) / 2)
    return {"sides": sides, "s": s, "A": A, "B2": B2, "C": C, "d1": d1, "d2": d2, "phi": (d1**2 + d2**2) / D**2}


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_marked_triangle(seed, min_arc: float = 0.05) -> CircleQuad:
    """Random triangle with a marked point: arc 4 is zero, the others at least ``min_arc``."""
    q = random_convex(_rng(seed), min_arc)
    s1, s2, s3, s4 = q.arcs_pi
    # fold the fourth arc into the third
    return q.with_arcs((s1, s2, s3 + s4, ZERO))


def random_perpendicular(seed, min_arc: float = 0.05) -> CircleQuad:
    """Random convex quad with ``s1 + s3 = pi`` (perpendicular diagonals)."""
    rng = _rng(seed)
    m = mpq(min_arc / PI)
    span = 1 - 2 * m
    u, v, w, k = (int(z) for z in rng.integers(0, _GRID, size=4, endpoint=True))
    s1 = m + span * mpq(u, _GRID)
    s2 = m + span * mpq(v, _GRID)
    D = 0.5 + 1.5 * k / _GRID
    return CircleQuad(D, mpq(2 * w, _GRID), (s1, s2, 1 - s1, 1 - s2))


def random_convex_batch(seed, n: int, min_arc: float = 0.05):
    """``n`` random convex quads as arrays ``(arcs[n, 4], D[n], theta0[n])`` in radians.

    Same distribution as :func:`random_convex`, for vectorized sweeps.
    """
    rng = _rng(seed)
    cuts = np.sort(rng.random((n, 3)), axis=1)
    spacing = np.diff(np.concatenate([np.zeros((n, 1)), cuts, np.ones((n, 1))], axis=1), axis=1)
    arcs = min_arc + (2 * PI - 4 * min_arc) * spacing
    D = rng.uniform(0.5, 2.0, size=n)
    theta0 = rng.uniform(0.0, 2 * PI, size=n)
    return arcs, D, theta0
