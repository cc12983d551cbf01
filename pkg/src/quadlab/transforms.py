"""Morphing and recutting of cyclic quads.

A morph keeps the interior angles and moves within the two-parameter cousin
family: arcs shift by ``(+t, -t, +t, -t)`` and the diameter is rescaled. A
recut cuts along a diagonal and reflects one triangle across it, which on the
circle swaps two adjacent arcs.

Angles are exact multiples of pi throughout (``*_pi`` arguments). Use
:func:`quadlab.cyclic_quad.to_pi_units` to convert from radians.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from numbers import Rational

from gmpy2 import mpq

from quadlab import tolerances as tol
from quadlab.cyclic_quad import CircleQuad, to_pi_units, to_radians
from quadlab.errors import BadArcs, BadDiameter, DegenerateDiagonal, InfeasibleMorph
from quadlab.geom_core import Scalar


_SLACK = mpq(tol.MORPH_TOL / math.pi)


class DiagonalChoice(enum.Enum):
    D13 = "D13"
    D24 = "D24"


class OppositePair(enum.Enum):
    P1P3 = "P1P3"
    P2P4 = "P2P4"


@dataclass(frozen=True)
class MorphParams:
    """Arc shift ``t_pi`` (multiple of pi) and diameter multiplier ``scale``."""

    t_pi: Rational = mpq(0)
    scale: Scalar = 1

    @classmethod
    def from_radians(cls, t: float, scale: Scalar = 1) -> "MorphParams":
        return cls(to_pi_units(t), scale)


def feasible_interval(q: CircleQuad) -> tuple[mpq, mpq]:
    s1, s2, s3, s4 = q.arcs_pi
    return max(-s1, -s3), min(s2, s4)


def morph(q: CircleQuad, p: MorphParams) -> CircleQuad:
    t = mpq(p.t_pi)
    lo, hi = feasible_interval(q)
    if t < lo - _SLACK or t > hi + _SLACK:
        raise InfeasibleMorph(
            f"t={to_radians(t):.6g} outside [{to_radians(lo):.6g}, {to_radians(hi):.6g}]"
        )
    t = min(max(t, lo), hi)
    if not p.scale > 0:
        raise BadDiameter(f"morph scale must be positive, got {p.scale}")
    s1, s2, s3, s4 = q.arcs_pi
    D = q.D if p.scale == 1 else q.D * p.scale
    try:
        return q.with_arcs((s1 + t, s2 - t, s3 + t, s4 - t), D=D)
    except BadArcs as exc:
        raise InfeasibleMorph(f"morph leaves a degenerate quad: {exc}") from exc


def recut(q: CircleQuad, diag: DiagonalChoice) -> CircleQuad:
    """Turn over triangle P1P2P3 (``D13``) or P2P3P4 (``D24``) on its diagonal.

    The middle vertex is mirrored across the perpendicular bisector of the
    diagonal, so it stays on the circle and its two sides trade places.
    Turning over the other triangle gives a congruent quad with rotated
    labels, so only this one is offered.
    """
    s1, s2, s3, s4 = q.arcs_pi
    if diag is DiagonalChoice.D13:
        span, arcs = s1 + s2, (s2, s1, s3, s4)
    else:
        span, arcs = s2 + s3, (s1, s3, s2, s4)
    if span == 0 or span == 2:
        raise DegenerateDiagonal(f"diagonal {diag.value} has zero length")
    return q.with_arcs(arcs)


def morph_to_max_diag_angle(q: CircleQuad) -> tuple[CircleQuad, mpq]:
    """Morph toward perpendicular diagonals, stopping at the feasibility boundary.

    The angle between the diagonals after a shift ``t`` is ``(s1+s3)/2 + t``;
    the target is a right angle. When the target is out of reach the shift is
    clamped and the result is a marked triangle.
    """
    s1, _, s3, _ = q.arcs_pi
    lo, hi = feasible_interval(q)
    t = min(max((1 - s1 - s3) / 2, lo), hi)
    return morph(q, MorphParams(t)), t


def perturb_opposite_angles(q: CircleQuad, pair: OppositePair, delta_pi: Rational) -> CircleQuad:
    """Recut, morph, recut: move one pair of opposite angles by ``(+delta, -delta)``.

    For ``P1P3`` the angle at P1 grows by ``delta`` and the angle at P3 shrinks;
    for ``P2P4`` the angle at P2 grows and P4 shrinks. The other pair is left
    untouched.
    """
    delta = mpq(delta_pi)
    if pair is OppositePair.P1P3:
        diag, t = DiagonalChoice.D13, delta
    else:
        diag, t = DiagonalChoice.D24, -delta
    return recut(morph(recut(q, diag), MorphParams(t)), diag)
