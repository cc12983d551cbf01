"""Numerical tolerances used across quadlab.

Every comparison threshold lives here so that CLI overrides and tests refer
to the same names.
"""

REL_TOL = 1e-12
ABS_TOL = 1e-15
PARALLEL_TOL = 1e-12
UNIT_TOL = 1e-14

# arc sum accepted by make_quad before exact renormalization
ARC_SUM_TOL = 1e-10
MORPH_TOL = 1e-12

SQUARE_TOL = 1e-9
CYCLIC_TOL = 1e-9
PERP_TOL = 1e-9

# acceptance-level bounds
BRAHMAGUPTA_TOL = 1e-10
INVARIANCE_TOL = 1e-12
MORPH_INVARIANCE_TOL = 1e-10
GROWTH_SLACK = 1e-9
FIBER_APPROX_TOL = 1e-9
ROUNDTRIP_TOL = 1e-9

MAX_ROUNDS = 200

DEFAULTS = {
    name: value
    for name, value in dict(globals()).items()
    if name.isupper() and isinstance(value, (int, float))
}
