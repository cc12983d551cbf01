"""Joining a cyclic quad to the square by morphs and recuts.

Each round morphs the quad so its diagonals meet as close to a right angle as
the feasible interval allows, then recuts along the longer diagonal. The
potential ``phi = (d1^2 + d2^2) / D^2`` is unchanged by morphs and grows at
every recut; the trace records it so the growth bound can be audited.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from quadlab import tolerances as tol
from quadlab.cyclic_quad import (
    CircleQuad,
    diag_angle_pi,
    is_square,
    metrics,
    to_radians,
)
from quadlab.errors import NotPerpendicular, RoundLimitExceeded, VerificationError
from quadlab.geom_core import format_scalar
from quadlab.transforms import DiagonalChoice, morph_to_max_diag_angle, recut


class StepKind(enum.Enum):
    MORPH = "morph"
    RECUT = "recut"


def phi(q: CircleQuad) -> float:
    """Scale-free diagonal potential ``(d1^2 + d2^2) / D^2``."""
    s1, s2, s3, _ = q.arcs_pi
    return math.sin(to_radians(s1 + s2) / 2) ** 2 + math.sin(to_radians(s2 + s3) / 2) ** 2


def longest_diagonal(q: CircleQuad) -> DiagonalChoice:
    """Longer diagonal, ``D13`` on ties.

    Chord length grows as its arc approaches a half circle, so the comparison
    is done exactly on the arcs.
    """
    s1, s2, s3, _ = q.arcs_pi
    if abs(s2 + s3 - 1) < abs(s1 + s2 - 1):
        return DiagonalChoice.D24
    return DiagonalChoice.D13


@dataclass(frozen=True)
class ReductionStep:
    kind: StepKind
    quad_after: CircleQuad
    phi_after: float
    diag_angle_after: float
    is_marked_triangle: bool
    morph_t_pi: Optional[mpq] = None
    diagonal: Optional[DiagonalChoice] = None

    @classmethod
    def record(cls, kind, quad, **kw) -> "ReductionStep":
        return cls(
            kind=kind,
            quad_after=quad,
            phi_after=phi(quad),
            diag_angle_after=to_radians(diag_angle_pi(quad)),
            is_marked_triangle=quad.is_marked_triangle,
            **kw,
        )

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is StepKind.MORPH:
            out["t"] = to_radians(self.morph_t_pi)
            out["t_pi"] = format_scalar(self.morph_t_pi)
        else:
            out["diagonal"] = self.diagonal.value
        out.update(
            quad=self.quad_after.to_json(),
            phi=self.phi_after,
            diag_angle=self.diag_angle_after,
            marked_triangle=self.is_marked_triangle,
        )
        return out


@dataclass
class ReductionTrace:
    start: CircleQuad
    steps: list[ReductionStep] = field(default_factory=list)
    terminated: bool = False
    phi_ratios: list[float] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return len(self.phi_ratios)

    @property
    def final(self) -> CircleQuad:
        return self.steps[-1].quad_after if self.steps else self.start

    def round_phis(self) -> list[float]:
        """phi at the start of every round, followed by the final phi."""
        return [phi(self.start)] + [s.phi_after for s in self.steps if s.kind is StepKind.RECUT]

    def claimed_ratios(self) -> list[float]:
        """Ratios of the rounds that began with ``phi <= 1``."""
        phis = self.round_phis()
        return [r for p, r in zip(phis, self.phi_ratios) if p <= 1]

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "phi_ratios": list(self.phi_ratios),
            "terminated": self.terminated,
        }


def reduce_to_square(
    q: CircleQuad,
    max_rounds: int = tol.MAX_ROUNDS,
    tol_: float = tol.SQUARE_TOL,
) -> ReductionTrace:
    """Run morph/recut rounds until the quad is a square.

    A round whose morph already lands on the square ends the run without a
    recut, so every recorded ratio belongs to a recut. The diameter is fixed to 1 for the whole run. Raises
    :class:`RoundLimitExceeded` carrying the partial trace if ``max_rounds``
    rounds do not reach a square.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    trace = ReductionTrace(start=q)
    cur = q.with_arcs(q.arcs_pi, D=1)
    prev_phi = phi(cur)
    while not is_square(cur, tol_):
        if trace.rounds >= max_rounds:
            raise RoundLimitExceeded(f"no square after {max_rounds} rounds", trace)
        cur, t = morph_to_max_diag_angle(cur)
        trace.steps.append(ReductionStep.record(StepKind.MORPH, cur, morph_t_pi=t))
        if is_square(cur, tol_):
            break
        diag = longest_diagonal(cur)
        cur = recut(cur, diag)
        step = ReductionStep.record(StepKind.RECUT, cur, diagonal=diag)
        trace.steps.append(step)
        trace.phi_ratios.append(step.phi_after / prev_phi)
        prev_phi = step.phi_after
    trace.terminated = True
    return trace


def perpendicular_check(q: CircleQuad, area_tol: float = 1e-10) -> float:
    """Relative gap ``|A^2 - B^2| / B^2`` for a quad with perpendicular diagonals.

    Also confirms the area equals half the product of the diagonals.
    """
    if abs(to_radians(q.arcs_pi[0] + q.arcs_pi[2] - 1)) > tol.PERP_TOL:
        raise NotPerpendicular("diagonals are not perpendicular (s1 + s3 != pi)")
    m = metrics(q)
    half_product = m.diagonals[0] * m.diagonals[1] / 2
    if abs(m.A - half_product) > area_tol * max(1.0, abs(m.A)):
        raise VerificationError(f"area {m.A!r} differs from d1*d2/2 = {half_product!r}")
    return abs(m.A * m.A - m.B2) / max(m.B2, 1e-300)
