"""Nudging one pair of opposite angles with recut, morph, recut.

Morphs keep every angle and recuts only permute arcs, yet the composite moves
one opposite pair by (+delta, -delta). Two such moves and a final morph reach
any nearby quad.
"""

from quadlab.cyclic_quad import interior_angles_pi, random_convex
from quadlab.transforms import MorphParams, OppositePair, morph, perturb_opposite_angles


def show(label, q):
    print(f"{label:<10}", " ".join(f"{float(a):.5f}" for a in interior_angles_pi(q)), " (angles / pi)")


start = random_convex(3, min_arc=0.4)
target = random_convex(4, min_arc=0.4)
show("start", start)
show("target", target)

a0, at = interior_angles_pi(start), interior_angles_pi(target)
w = perturb_opposite_angles(start, OppositePair.P1P3, at[0] - a0[0])
show("P1P3", w)
w = perturb_opposite_angles(w, OppositePair.P2P4, at[1] - a0[1])
show("P2P4", w)

# Same angles now; one morph matches the arcs and the diameter.
w = morph(w, MorphParams(target.arcs_pi[0] - w.arcs_pi[0], target.D / w.D))
print("arcs match exactly:", w.arcs_pi == target.arcs_pi)
