"""Seeded verification sweeps behind the command-line interface.

Each sweep returns a :class:`Check`. Samples are drawn in fixed-size chunks,
each with its own generator keyed on ``(seed, sweep, chunk)``, so results do
not depend on how many workers evaluate the chunks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np
from gmpy2 import mpq

from quadlab import tolerances
from quadlab.cyclic_quad import (
    interior_angles_pi,
    metrics,
    metrics_batch,
    random_convex,
    random_convex_batch,
    random_marked_triangle,
    random_perpendicular,
    to_pi_units,
    vertices,
)
from quadlab.errors import QuadLabError
from quadlab.reduction import perpendicular_check
from quadlab.transforms import (
    DiagonalChoice,
    MorphParams,
    OppositePair,
    feasible_interval,
    morph,
    perturb_opposite_angles,
    recut,
)

CHUNK = 1000


@dataclass(frozen=True)
class Check:
    name: str
    samples: int
    max_error: float
    passed: bool

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = out.pop("passed")
        return out


def worker_count() -> int:
    try:
        return max(0, int(os.environ.get("QUADLAB_THREADS", "0")))
    except ValueError:
        return 0


def _chunks(samples: int):
    return [(k, min(CHUNK, samples - k * CHUNK)) for k in range((samples + CHUNK - 1) // CHUNK)]


def _chunk_rng(seed: int, sweep: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng([seed, sweep, chunk])


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# chunk kernels: (seed, chunk, n) -> max error over the chunk


def _brahmagupta(seed, chunk, n):
    arcs, D, theta0 = random_convex_batch(_chunk_rng(seed, 1, chunk), n)
    return float(np.max(np.abs(metrics_batch(arcs, D, theta0)["C"] - 1)))


def _heron(seed, chunk, n):
    rng = _chunk_rng(seed, 2, chunk)
    worst = 0.0
    for _ in range(n):
        m = metrics(random_marked_triangle(rng))
        a, b, c, _ = m.sides
        worst = max(worst, _rel(m.A**2, m.s * (m.s - a) * (m.s - b) * (m.s - c)))
    return worst


def _chords(seed, chunk, n):
    rng = _chunk_rng(seed, 3, chunk)
    worst = 0.0
    for _ in range(n):
        q = random_convex(rng)
        P = vertices(q)
        for i, side in enumerate(metrics(q).sides):
            worst = max(worst, _rel(math.dist(P[i], P[(i + 1) % 4]), side))
    return worst


def _recut(seed, chunk, n):
    rng = _chunk_rng(seed, 4, chunk)
    worst = 0.0
    for _ in range(n):
        q = random_convex(rng)
        m0 = metrics(q)
        for diag in DiagonalChoice:
            r = recut(q, diag)
            m1 = metrics(r)
            if Counter(m1.sides) != Counter(m0.sides) or recut(r, diag) != q:
                return math.inf
            worst = max(worst, abs(m1.C - m0.C))
    return worst


def _morph(seed, chunk, n):
    rng = _chunk_rng(seed, 5, chunk)
    worst = 0.0
    for _ in range(n):
        q = random_convex(rng)
        lo, hi = feasible_interval(q)
        m0, ang0 = metrics(q), interior_angles_pi(q)
        for frac in rng.random(10):
            t = lo + (hi - lo) * mpq(float(frac))
            if t in (lo, hi):
                continue
            r = morph(q, MorphParams(t, float(rng.uniform(0.5, 2.0))))
            if interior_angles_pi(r) != ang0:
                return math.inf
            worst = max(worst, abs(metrics(r).C - m0.C))
    return worst


def _perturb(seed, chunk, n):
    rng = _chunk_rng(seed, 6, chunk)
    for _ in range(n):
        q = random_convex(rng, min_arc=0.2)
        pair = OppositePair.P1P3 if rng.random() < 0.5 else OppositePair.P2P4
        delta = to_pi_units(float(rng.uniform(-0.05, 0.05)))
        a0, a1 = interior_angles_pi(q), interior_angles_pi(perturb_opposite_angles(q, pair, delta))
        i, j = (0, 2) if pair is OppositePair.P1P3 else (1, 3)
        k, l = (1, 3) if pair is OppositePair.P1P3 else (0, 2)
        if a1[i] - a0[i] != delta or a1[j] - a0[j] != -delta or a1[k] != a0[k] or a1[l] != a0[l]:
            return math.inf
    return 0.0


def _perp(seed, chunk, n):
    rng = _chunk_rng(seed, 7, chunk)
    worst = 0.0
    for _ in range(n):
        try:
            worst = max(worst, perpendicular_check(random_perpendicular(rng)))
        except QuadLabError:
            return math.inf
    return worst


KERNELS = {
    "brahmagupta": (_brahmagupta, "BRAHMAGUPTA_TOL"),
    "heron": (_heron, "BRAHMAGUPTA_TOL"),
    "chord_consistency": (_chords, "REL_TOL"),
    "recut_invariance": (_recut, "INVARIANCE_TOL"),
    "morph_invariance": (_morph, "MORPH_INVARIANCE_TOL"),
    "opposite_angle_perturbation": (_perturb, "INVARIANCE_TOL"),
    "perpendicular": (_perp, "BRAHMAGUPTA_TOL"),
}

VERIFY_SUITE = [
    "brahmagupta",
    "heron",
    "chord_consistency",
    "recut_invariance",
    "morph_invariance",
    "opposite_angle_perturbation",
]


def _run_chunk(args):
    name, seed, chunk, n = args
    return KERNELS[name][0](seed, chunk, n)


def run_check(name: str, samples: int, seed: int, tol: dict | None = None, workers: int | None = None) -> Check:
    if samples <= 0:
        raise ValueError("samples must be positive")
    tol = {**tolerances.DEFAULTS, **(tol or {})}
    jobs = [(name, seed, k, n) for k, n in _chunks(samples)]
    workers = worker_count() if workers is None else workers
    if workers > 0 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(_run_chunk, jobs))
    else:
        errors = [_run_chunk(j) for j in jobs]
    worst = max(errors)
    return Check(name, samples, worst, bool(worst <= tol[KERNELS[name][1]]))
