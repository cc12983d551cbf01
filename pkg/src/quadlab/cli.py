"""Command-line entry point: ``quadlab {verify,fiber,reduce,perp,perturb}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np
from gmpy2 import mpq

from quadlab import tolerances
from quadlab.checks import VERIFY_SUITE, run_check
from quadlab.cyclic_quad import CircleQuad, interior_angles_pi, random_convex
from quadlab.errors import QuadLabError, RoundLimitExceeded
from quadlab.fiber import FiberSlopes, interpolate_fiber_polynomials
from quadlab.reduction import reduce_to_square
from quadlab.render import write_trace_svgs
from quadlab.transforms import MorphParams, OppositePair, morph, perturb_opposite_angles

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _tolerance(text: str) -> tuple[str, float]:
    name, _, value = text.partition("=")
    key = name.strip().upper()
    if key not in tolerances.DEFAULTS:
        raise argparse.ArgumentTypeError(f"unknown tolerance {name!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value for {name}: {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=_tolerance, action="append", default=[], metavar="NAME=VALUE")
    common.add_argument("--out", type=Path, default=None, help="output file (or directory with --svg)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--timestamp", action="store_true", help="add a metadata timestamp")
    common.add_argument("--reproducible", action="store_true", help="never emit wall-clock data")

    p = _Parser(prog="quadlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="Brahmagupta, Heron and move-invariance sweeps")
    v.add_argument("--samples", type=int, default=1000)

    f = sub.add_parser("fiber", parents=[common], help="interpolate A and B^2 on one fiber")
    f.add_argument("--rho", required=True)
    f.add_argument("--sigma", required=True)
    f.add_argument("--grid-radius", type=int, default=2)
    f.add_argument("--exact", action="store_true")

    r = sub.add_parser("reduce", parents=[common], help="reduce a quad to the square")
    r.add_argument("--quad", type=Path, help="CircleQuad JSON file")
    r.add_argument("--max-rounds", type=int, default=tolerances.MAX_ROUNDS)
    r.add_argument("--svg", action="store_true", help="write step_NNN.svg frames into --out")

    pp = sub.add_parser("perp", parents=[common], help="perpendicular-diagonal sweep")
    pp.add_argument("--samples", type=int, default=1000)

    pt = sub.add_parser("perturb", parents=[common], help="reach nearby quads by recut/morph walks")
    pt.add_argument("--samples", type=int, default=100)
    return p


def _emit(payload: dict, args, text: str | None = None) -> None:
    if args.timestamp and not args.reproducible:
        payload = {**payload, "metadata": {"timestamp": datetime.now(timezone.utc).isoformat()}}
    if args.format == "text" and text is not None:
        body = text
    else:
        body = json.dumps(payload, indent=2, sort_keys=False)
    body = body.rstrip("\n") + "\n"
    if args.out is None:
        sys.stdout.write(body)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(body, encoding="utf-8")


def _checks_payload(checks, args) -> int:
    payload = {"seed": args.seed, "checks": [c.to_json() for c in checks]}
    text = "\n".join(
        f"{'PASS' if c.passed else 'FAIL'}  {c.name:<28} samples={c.samples:<7} max_error={c.max_error:.3e}"
        for c in checks
    )
    _emit(payload, args, text)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.samples <= 0:
        raise UsageError("--samples must be positive")
    tol = dict(args.tol)
    return _checks_payload([run_check(name, args.samples, args.seed, tol) for name in VERIFY_SUITE], args)


def cmd_perp(args) -> int:
    if args.samples <= 0:
        raise UsageError("--samples must be positive")
    return _checks_payload([run_check("perpendicular", args.samples, args.seed, dict(args.tol))], args)


def _parse_slope(text: str, exact: bool):
    if exact:
        try:
            return Fraction(text)
        except ValueError:
            raise UsageError(f"slope {text!r} is not a rational p/q") from None
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except ValueError:
        raise UsageError(f"slope {text!r} is not a number") from None


def cmd_fiber(args) -> int:
    rho, sigma = _parse_slope(args.rho, args.exact), _parse_slope(args.sigma, args.exact)
    try:
        slopes = FiberSlopes(rho, sigma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.grid_radius < 2:
        raise UsageError("--grid-radius must be at least 2")
    report = interpolate_fiber_polynomials(slopes, args.grid_radius)
    rel = dict(args.tol).get("FIBER_APPROX_TOL", tolerances.FIBER_APPROX_TOL)
    ok = report.certified(rel)
    payload = report.to_json()
    payload["certified"] = ok
    _emit(payload, args, f"{'PASS' if ok else 'FAIL'}  kappa={payload['kappa']} mu={payload['mu']}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reduce(args) -> int:
    if args.max_rounds < 1:
        raise UsageError("--max-rounds must be at least 1")
    if args.quad is not None:
        try:
            q = CircleQuad.from_json(json.loads(args.quad.read_text(encoding="utf-8")))
        except (OSError, KeyError, ValueError, QuadLabError) as exc:
            raise UsageError(f"cannot load quad: {exc}") from None
    else:
        q = random_convex(args.seed)
    tol = dict(args.tol)
    status = EXIT_OK
    try:
        trace = reduce_to_square(q, args.max_rounds, tol.get("SQUARE_TOL", tolerances.SQUARE_TOL))
    except RoundLimitExceeded as exc:
        trace, status = exc.trace, EXIT_FAIL
    slack = tol.get("GROWTH_SLACK", tolerances.GROWTH_SLACK)
    if any(r < 1.5 - slack for r in trace.claimed_ratios()):
        status = EXIT_FAIL
    if args.svg:
        if args.out is None:
            raise UsageError("--svg needs --out DIR")
        write_trace_svgs(trace, args.out)
        args.out = args.out / "trace.json"
    rounds = "\n".join(
        f"{s.kind.value:<6} phi={s.phi_after:.6f} diag_angle={s.diag_angle_after:.6f}"
        + (" marked" if s.is_marked_triangle else "")
        for s in trace.steps
    )
    _emit(trace.to_json(), args, rounds or "already a square")
    return status


def cmd_perturb(args) -> int:
    """Walk to a random nearby target: two perturbations, then one morph."""
    if args.samples <= 0:
        raise UsageError("--samples must be positive")
    rng = np.random.default_rng(args.seed)
    failures = 0
    worst_size = 0.0
    for _ in range(args.samples):
        q = random_convex(rng, min_arc=0.3)
        d1, d2, t = (_small_angle(rng) for _ in range(3))
        scale = float(rng.uniform(0.9, 1.1))
        a0 = interior_angles_pi(q)
        w = perturb_opposite_angles(q, OppositePair.P1P3, d1)
        w = perturb_opposite_angles(w, OppositePair.P2P4, d2)
        w = morph(w, MorphParams(t, scale))
        want = (a0[0] + d1, a0[1] + d2, a0[2] - d1, a0[3] - d2)
        if interior_angles_pi(w) != want:
            failures += 1
        worst_size = max(worst_size, abs(float(w.D) - float(q.D) * scale))
    payload = {"seed": args.seed, "samples": args.samples, "angle_failures": failures, "max_size_error": worst_size}
    _emit(payload, args, f"{'PASS' if not failures else 'FAIL'}  {args.samples} walks, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _small_angle(rng) -> mpq:
    # within +-pi/64, exact
    return mpq(int(rng.integers(-(1 << 40), 1 << 40)), 1 << 46)


COMMANDS = {
    "verify": cmd_verify,
    "fiber": cmd_fiber,
    "reduce": cmd_reduce,
    "perp": cmd_perp,
    "perturb": cmd_perturb,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"quadlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
