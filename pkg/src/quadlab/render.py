"""Minimal SVG frames for reduction traces. Write-only; no plotting dependency."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from quadlab.cyclic_quad import CircleQuad, vertices

SIZE = 240
MARGIN = 20


def _xy(p, radius: float) -> tuple[float, float]:
    # unit circle, y axis pointing up
    r = (SIZE - 2 * MARGIN) / 2
    return SIZE / 2 + r * p[0] / radius, SIZE / 2 - r * p[1] / radius


def quad_svg(q: CircleQuad, caption: str = "") -> str:
    radius = float(q.D) / 2
    P = [_xy(p, radius) for p in vertices(q)]
    c = SIZE / 2
    r = (SIZE - 2 * MARGIN) / 2
    poly = " ".join(f"{x:.3f},{y:.3f}" for x, y in P)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'  <circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="#999" stroke-width="1"/>',
        f'  <polygon points="{poly}" fill="#cde" fill-opacity="0.6" stroke="#124" stroke-width="1.5"/>',
    ]
    for i, j in ((0, 2), (1, 3)):
        (x1, y1), (x2, y2) = P[i], P[j]
        lines.append(
            f'  <line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
            'stroke="#c33" stroke-width="1" stroke-dasharray="4,3"/>'
        )
    for k, (x, y) in enumerate(P):
        lines.append(f'  <circle cx="{x:.3f}" cy="{y:.3f}" r="2.5" fill="#124"/>')
        lines.append(f'  <text x="{x + 4:.3f}" y="{y - 4:.3f}" font-size="10">P{k + 1}</text>')
    if caption:
        lines.append(f'  <text x="6" y="{SIZE - 6}" font-size="10">{escape(caption)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_trace_svgs(trace, out_dir) -> list[Path]:
    """One frame for the start quad, then one per step: ``step_000.svg``, ..."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames = [(trace.start, "start")]
    for step in trace.steps:
        label = step.kind.value
        if step.diagonal is not None:
            label += f" {step.diagonal.value}"
        frames.append((step.quad_after, f"{label}  phi={step.phi_after:.4f}"))
    paths = []
    for k, (q, caption) in enumerate(frames):
        path = out / f"step_{k:03d}.svg"
        path.write_text(quad_svg(q, caption), encoding="utf-8")
        paths.append(path)
    return paths

