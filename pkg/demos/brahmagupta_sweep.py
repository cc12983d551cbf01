"""Brahmagupta's formula on random cyclic quads, and Heron as its limit.

Draws seeded random quads, compares the shoelace area with the formula
``(s-a)(s-b)(s-c)(s-d)``, then collapses one arc to zero to recover Heron.
"""

import numpy as np

from quadlab.cyclic_quad import metrics, metrics_batch, random_convex, random_convex_batch

rng = np.random.default_rng(1)

# One quad in detail.
q = random_convex(rng)
m = metrics(q)
print("arcs (units of pi):", [round(float(a), 4) for a in q.arcs_pi])
print("sides:", [round(x, 4) for x in m.sides])
print(f"A^2 = {m.A**2:.12f}")
print(f"B^2 = {m.B2:.12f}")
print(f"C   = {m.C:.15f}")

# A vectorized sweep.
arcs, D, theta0 = random_convex_batch(rng, 100_000)
C = metrics_batch(arcs, D, theta0)["C"]
print(f"\n100000 quads: max |C - 1| = {np.max(np.abs(C - 1)):.2e}")

# Shrink the fourth arc: the quad becomes a triangle with a marked point.
s1, s2, s3, s4 = q.arcs_pi
for shrink in (1, 10, 1000, None):
    arcs = (s1, s2, s3 + s4, 0 * s4) if shrink is None else (s1, s2, s3 + s4 - s4 / shrink, s4 / shrink)
    t = metrics(q.with_arcs(arcs))
    a, b, c, d = t.sides
    heron = t.s * (t.s - a) * (t.s - b) * (t.s - c)
    label = "d = 0" if shrink is None else f"d = {d:.2e}"
    print(f"{label:>12}:  A^2 = {t.A**2:.10f}   Heron s(s-a)(s-b)(s-c) = {heron:.10f}")
