"""Joining a random quad to the square by morphs and recuts.

Prints each step with the potential phi = (d1^2 + d2^2)/D^2 and writes SVG
frames of the trace into ``reduction_frames/``.
"""

import sys
from pathlib import Path

from quadlab.cyclic_quad import random_convex
from quadlab.reduction import reduce_to_square
from quadlab.render import write_trace_svgs

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 42
trace = reduce_to_square(random_convex(seed))

print(f"seed {seed}: start phi = {trace.round_phis()[0]:.6f}")
for step in trace.steps:
    tag = "marked triangle" if step.is_marked_triangle else ""
    how = f"t={float(step.morph_t_pi):+.4f}pi" if step.morph_t_pi is not None else f"along {step.diagonal.value}"
    print(f"  {step.kind.value:<6} {how:<16} phi={step.phi_after:.6f}  {tag}")
print("phi ratios per round:", [round(r, 4) for r in trace.phi_ratios])

out = Path("reduction_frames")
paths = write_trace_svgs(trace, out)
print(f"wrote {len(paths)} frames to {out}/")
