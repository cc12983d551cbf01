"""Four-line configurations with fixed slopes and the polynomials on them.

For slopes ``rho, sigma > 0`` the plane ``L(rho, sigma)`` collects quads cut
out by lines ``l_a, l_b, l_c, l_d`` of slopes ``rho, sigma, -rho, -sigma``, with
``l_a`` and ``l_c`` meeting at the origin and ``l_b, l_d`` meeting at ``(x, y)``.
Every vertex is a linear function of ``(x, y)``, so the signed sides are linear,
the signed area is quadratic and ``B^2`` is quartic. This module evaluates those
quantities, fits them on a grid (exactly, for Pythagorean slopes) and embeds an
arbitrary generic cyclic quad into its plane.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from quadlab import tolerances as tol
from quadlab.errors import (
    DegenerateSlope,
    InconsistentFit,
    NonGeneric,
    NonPythagoreanExact,
    NotCyclic,
)
from quadlab.geom_core import (
    APPROX,
    Line,
    PlanarQuad,
    Point2,
    Scalar,
    format_scalar,
    is_convex,
    line_intersection,
    rational_sqrt,
    rotate,
    scalar_mode,
    signed_area,
    signed_distance,
)

SIDES = "abcd"


@dataclass(frozen=True)
class FiberSlopes:
    rho: Scalar
    sigma: Scalar

    def __post_init__(self):
        mode = scalar_mode(self.rho, self.sigma)
        if mode is None:
            object.__setattr__(self, "rho", Fraction(self.rho))
            object.__setattr__(self, "sigma", Fraction(self.sigma))
        if not (self.rho > 0 and self.sigma > 0):
            raise ValueError("fiber slopes must be positive")
        if self.rho == self.sigma:
            raise ValueError("fiber slopes must differ")
        if self.exact:
            for name in ("rho", "sigma"):
                v = getattr(self, name)
                if rational_sqrt(1 + Fraction(v) ** 2) is None:
                    raise NonPythagoreanExact(
                        f"{name}={format_scalar(v)}: 1 + {name}^2 is not the square of a rational"
                    )

    @property
    def exact(self) -> bool:
        return scalar_mode(self.rho, self.sigma) != APPROX

    def coerce(self, v) -> Scalar:
        return Fraction(v) if self.exact else float(v)

    def directions(self) -> tuple[tuple[Scalar, Scalar], ...]:
        one = self.coerce(1)
        return ((one, self.rho), (one, self.sigma), (one, -self.rho), (one, -self.sigma))


@dataclass(frozen=True)
class FiberPoint:
    slopes: FiberSlopes
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", self.slopes.coerce(self.x))
        object.__setattr__(self, "y", self.slopes.coerce(self.y))


@dataclass(frozen=True)
class SignedSides:
    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar
    A: Scalar

    @property
    def sides(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c, self.d)

    @property
    def B2(self) -> Scalar:
        a, b, c, d = self.sides
        s = (a + b + c + d) / 2
        return (s - a) * (s - b) * (s - c) * (s - d)

    @property
    def C(self) -> Optional[Scalar]:
        B2 = self.B2
        return None if B2 == 0 else self.A * self.A / B2


def fiber_lines(fp: FiberPoint) -> tuple[Line, Line, Line, Line]:
    zero = fp.slopes.coerce(0)
    origin, apex = Point2(zero, zero), Point2(fp.x, fp.y)
    da, db, dc, dd = fp.slopes.directions()
    return (Line(origin, da), Line(apex, db), Line(origin, dc), Line(apex, dd))


def fiber_vertices(fp: FiberPoint) -> tuple[Point2, Point2, Point2, Point2]:
    """Vertices ``(l_d^l_a, l_a^l_b, l_b^l_c, l_c^l_d)``; may coincide when ``x = y = 0``."""
    la, lb, lc, ld = fiber_lines(fp)
    return (
        line_intersection(ld, la),
        line_intersection(la, lb),
        line_intersection(lb, lc),
        line_intersection(lc, ld),
    )


def quad_from_fiber(fp: FiberPoint) -> PlanarQuad:
    return PlanarQuad(fiber_vertices(fp))


def _raw_sides(fp: FiberPoint, units) -> tuple[Scalar, ...]:
    V = fiber_vertices(fp)
    return tuple(signed_distance(V[(i + 1) % 4], V[i], units[i]) for i in range(4)) + (signed_area(V),)


def _units(slopes: FiberSlopes):
    if slopes.exact:
        out = []
        for dx, dy in slopes.directions():
            n = rational_sqrt(dx * dx + dy * dy)
            out.append((dx / n, dy / n))
        return tuple(out)
    return tuple((dx / math.hypot(dx, dy), dy / math.hypot(dx, dy)) for dx, dy in slopes.directions())


def _scan_points(slopes: FiberSlopes, n: int = 720):
    """Rational directions around the circle, starting just above the +x axis."""
    for k in range(n):
        th = 2 * math.pi * (k + 0.5) / n
        if slopes.exact:
            yield k, Fraction(round(math.cos(th) * 10**6), 10**6), Fraction(round(math.sin(th) * 10**6), 10**6)
        else:
            yield k, math.cos(th), math.sin(th)


@dataclass(frozen=True)
class SignConvention:
    """Per-side unit vectors and area orientation making a, b, c, d, A > 0 on ``reference``.

    ``cone`` is the closed range of scan angles (radians) of the convex cone
    containing the reference point.
    """

    units: tuple
    area_sign: int
    reference: tuple[Scalar, Scalar]
    cone: tuple[float, float]


@functools.lru_cache(maxsize=256)
def sign_convention(slopes: FiberSlopes) -> SignConvention:
    base = _units(slopes)
    convex = []
    for k, x, y in _scan_points(slopes):
        convex.append(is_convex(fiber_vertices(FiberPoint(slopes, x, y))))
    n = len(convex)
    if not any(convex):
        raise NonGeneric("no convex configuration found in this fiber")
    k0 = convex.index(True)
    lo = k0
    while convex[(lo - 1) % n] and (lo - 1) % n != k0:
        lo -= 1
    hi = k0
    while convex[(hi + 1) % n] and (hi + 1) % n != k0:
        hi += 1
    # aim at the middle of the cone so the reference is well inside it
    mid = (lo + hi) // 2 % n
    _, x, y = next(p for p in _scan_points(slopes) if p[0] == mid)
    raw = _raw_sides(FiberPoint(slopes, x, y), base)
    units = tuple(
        u if r > 0 else (-u[0], -u[1]) for u, r in zip(base, raw[:4])
    )
    step = 2 * math.pi / n
    return SignConvention(
        units=units,
        area_sign=1 if raw[4] > 0 else -1,
        reference=(x, y),
        cone=((lo + 0.5) * step, (hi + 0.5) * step),
    )


def signed_sides_and_area(fp: FiberPoint) -> SignedSides:
    conv = sign_convention(fp.slopes)
    a, b, c, d, A = _raw_sides(fp, conv.units)
    return SignedSides(a, b, c, d, conv.area_sign * A)


def fiber_C(fp: FiberPoint) -> Optional[Scalar]:
    return signed_sides_and_area(fp).C


def morph_in_fiber(fp: FiberPoint, target: tuple[Scalar, Scalar]) -> FiberPoint:
    """Move to another point of the same fiber; all such points are cousins."""
    return FiberPoint(fp.slopes, *target)


# -- interpolation ---------------------------------------------------------------


def monomials(degree: int) -> list[tuple[int, int]]:
    return [(i, k - i) for k in range(degree + 1) for i in range(k, -1, -1)]


def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve an overdetermined rational system that must be exactly consistent.

    Gauss-Jordan elimination over the rationals. Raises
    :class:`InconsistentFit` if the system has no solution or is rank
    deficient.
    """
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        piv = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if piv is None:
            raise InconsistentFit(f"rank deficient at column {col}")
        m[pivot_row], m[piv] = m[piv], m[pivot_row]
        p = m[pivot_row][col]
        m[pivot_row] = [v / p for v in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[pivot_row])]
        pivot_row += 1
    for r in range(pivot_row, len(m)):
        if m[r][-1] != 0:
            raise InconsistentFit("overdetermined system is inconsistent")
    return [m[r][-1] for r in range(ncols)]


def eval_poly(coeffs: dict, x: Scalar, y: Scalar) -> Scalar:
    return sum(c * x**i * y**j for (i, j), c in coeffs.items())


@dataclass(frozen=True)
class FiberReport:
    slopes: FiberSlopes
    coeffs_A: dict
    coeffs_B2: dict
    kappa: Scalar
    mu: Scalar
    exact: bool
    max_offdiag_A: Scalar
    max_offdiag_B2: Scalar
    residual_kappa_sq_mu: Scalar
    grid_radius: int

    def certified(self, rel_tol: float = tol.FIBER_APPROX_TOL) -> bool:
        if self.exact:
            return self.max_offdiag_A == 0 and self.max_offdiag_B2 == 0 and self.residual_kappa_sq_mu == 0
        return (
            self.max_offdiag_A <= rel_tol * abs(self.kappa)
            and self.max_offdiag_B2 <= rel_tol * abs(self.mu)
            and abs(self.residual_kappa_sq_mu) <= rel_tol * abs(self.mu)
        )

    def to_json(self) -> dict:
        def table(coeffs):
            return {f"{i},{j}": format_scalar(c) for (i, j), c in sorted(coeffs.items())}

        return {
            "rho": format_scalar(self.slopes.rho),
            "sigma": format_scalar(self.slopes.sigma),
            "exact": self.exact,
            "grid_radius": self.grid_radius,
            "kappa": format_scalar(self.kappa),
            "mu": format_scalar(self.mu),
            "offdiag_max_A": format_scalar(self.max_offdiag_A),
            "offdiag_max_B2": format_scalar(self.max_offdiag_B2),
            "kappa_sq_minus_mu": format_scalar(self.residual_kappa_sq_mu),
            "certified": self.certified(),
            "coeffs_A": table(self.coeffs_A),
            "coeffs_B2": table(self.coeffs_B2),
        }


def interpolate_fiber_polynomials(slopes: FiberSlopes, grid_radius: int = 2) -> FiberReport:
    """Fit A on degree <= 2 and B^2 on degree <= 4 monomials over a square grid.

    Exact slopes give an exact rational fit whose surplus equations must all
    hold; one extra off-grid point is checked as well. Float slopes use a
    least-squares fit.
    """
    if grid_radius < 2:
        raise ValueError("grid_radius must be at least 2")
    pts = [(i, j) for i in range(-grid_radius, grid_radius + 1) for j in range(-grid_radius, grid_radius + 1)]
    samples = [signed_sides_and_area(FiberPoint(slopes, x, y)) for x, y in pts]
    fits = {}
    for name, deg, values in (
        ("A", 2, [s.A for s in samples]),
        ("B2", 4, [s.B2 for s in samples]),
    ):
        basis = monomials(deg)
        if slopes.exact:
            rows = [[Fraction(x) ** i * Fraction(y) ** j for i, j in basis] for x, y in pts]
            coeffs = dict(zip(basis, solve_exact(rows, values)))
        else:
            M = np.array([[float(x) ** i * float(y) ** j for i, j in basis] for x, y in pts])
            sol, *_ = np.linalg.lstsq(M, np.array(values, dtype=float), rcond=None)
            coeffs = dict(zip(basis, (float(v) for v in sol)))
        fits[name] = coeffs

    if slopes.exact:
        probe = FiberPoint(slopes, Fraction(2 * grid_radius + 1, 3), Fraction(-(2 * grid_radius + 3), 5))
        direct = signed_sides_and_area(probe)
        if eval_poly(fits["A"], probe.x, probe.y) != direct.A or eval_poly(fits["B2"], probe.x, probe.y) != direct.B2:
            raise InconsistentFit("fit disagrees with direct evaluation off the grid")

    kappa, mu = fits["A"][(1, 1)], fits["B2"][(2, 2)]
    zero = slopes.coerce(0)
    return FiberReport(
        slopes=slopes,
        coeffs_A=fits["A"],
        coeffs_B2=fits["B2"],
        kappa=kappa,
        mu=mu,
        exact=slopes.exact,
        max_offdiag_A=max((abs(c) for k, c in fits["A"].items() if k != (1, 1)), default=zero),
        max_offdiag_B2=max((abs(c) for k, c in fits["B2"].items() if k != (2, 2)), default=zero),
        residual_kappa_sq_mu=kappa * kappa - mu,
        grid_radius=grid_radius,
    )


# -- embedding an arbitrary quad --------------------------------------------------


@dataclass(frozen=True)
class FiberEmbedding:
    """Where a planar quad sits in its fiber.

    Fiber vertex ``k`` equals ``rotate(pq[labeling[k]], psi) - translation``.
    ``labeling`` is ``(0, 1, 2, 3)`` or, when the side slopes come out with
    mixed signs, the reversed traversal ``(1, 0, 3, 2)`` that keeps side 1 on
    ``l_a``.
    """

    point: FiberPoint
    psi: float
    translation: Point2
    labeling: tuple[int, int, int, int]

    def transform(self, p) -> Point2:
        r = rotate(p, self.psi)
        return Point2(r[0] - self.translation[0], r[1] - self.translation[1])


def _direction_angles(P) -> list[float]:
    return [math.atan2(P[(i + 1) % 4][1] - P[i][1], P[(i + 1) % 4][0] - P[i][0]) % math.pi for i in range(4)]


def _mod_pi_gap(angle: float) -> float:
    r = angle % math.pi
    return min(r, math.pi - r)


def fiber_from_quad(pq: PlanarQuad, cyclic_tol: float = tol.CYCLIC_TOL) -> FiberEmbedding:
    """Rotate and translate a generic cyclic quad into some ``L(rho, sigma)``."""
    P = [Point2(float(p[0]), float(p[1])) for p in pq]
    phi_a, phi_b, phi_c, phi_d = _direction_angles(P)
    if _mod_pi_gap(phi_a + phi_c - phi_b - phi_d) > cyclic_tol:
        raise NotCyclic("opposite side directions fail the cyclicity certificate")
    if _mod_pi_gap(phi_a - phi_c) <= cyclic_tol or _mod_pi_gap(phi_b - phi_d) <= cyclic_tol:
        raise NonGeneric("a pair of opposite sides is parallel")

    psi = -(phi_a + phi_c) / 2
    if math.tan(phi_a + psi) < 0:
        psi += math.pi / 2
    labeling = (0, 1, 2, 3)
    if math.tan(phi_b + psi) < 0:
        labeling = (1, 0, 3, 2)
    V = [P[k] for k in labeling]
    # fix the remaining half-turn ambiguity: side a runs left to right
    if rotate(V[1], psi)[0] - rotate(V[0], psi)[0] < 0:
        psi += math.pi
    R = [rotate(v, psi) for v in V]

    slopes = []
    for i in range(4):
        dx, dy = R[(i + 1) % 4][0] - R[i][0], R[(i + 1) % 4][1] - R[i][1]
        scale = math.hypot(dx, dy)
        if abs(dx) <= tol.PARALLEL_TOL * scale or abs(dy) <= tol.PARALLEL_TOL * scale:
            raise DegenerateSlope(f"side {SIDES[i]} is axis-parallel after rotation")
        slopes.append(dy / dx)
    rho = (slopes[0] - slopes[2]) / 2
    sigma = (slopes[1] - slopes[3]) / 2
    if math.isclose(rho, sigma, rel_tol=tol.CYCLIC_TOL):
        raise NonGeneric("adjacent sides parallel")

    def through(p, q):
        return Line(p, (q[0] - p[0], q[1] - p[1]))

    la, lb, lc, ld = (through(R[i], R[(i + 1) % 4]) for i in range(4))
    shift = line_intersection(la, lc)
    apex = line_intersection(lb, ld)
    fp = FiberPoint(FiberSlopes(rho, sigma), apex[0] - shift[0], apex[1] - shift[1])
    return FiberEmbedding(point=fp, psi=psi % (2 * math.pi), translation=shift, labeling=labeling)
