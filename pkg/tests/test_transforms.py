import math
from collections import Counter

import numpy as np
import pytest
from gmpy2 import mpq

from quadlab.cyclic_quad import (
    interior_angles_pi,
    metrics,
    quad_from_pi,
    random_convex,
    vertices,
)
from quadlab.errors import InfeasibleMorph
from quadlab.transforms import (
    DiagonalChoice,
    MorphParams,
    OppositePair,
    feasible_interval,
    morph,
    morph_to_max_diag_angle,
    perturb_opposite_angles,
    recut,
)

H = mpq(1, 2)


def _flip(p, a, b):
    # mirror image of p across the perpendicular bisector of ab: the triangle
    # abp turned over so that its two sides at p trade places
    mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    nx, ny = b[0] - a[0], b[1] - a[1]
    t = ((p[0] - mx) * nx + (p[1] - my) * ny) / (nx * nx + ny * ny)
    return (p[0] - 2 * t * nx, p[1] - 2 * t * ny)


def test_morph_examples():
    sq = quad_from_pi(1, [H] * 4)
    r = morph(sq, MorphParams(mpq(1, 4)))
    assert r.arcs_pi == (mpq(3, 4), mpq(1, 4), mpq(3, 4), mpq(1, 4))
    assert interior_angles_pi(r) == interior_angles_pi(sq)
    r = morph(sq, MorphParams(mpq(0), scale=3))
    assert r.D == 3 and r.arcs_pi == sq.arcs_pi


def test_morph_boundary_and_beyond():
    q = quad_from_pi(1, [mpq(1, 4), mpq(3, 4), mpq(1, 4), mpq(3, 4)])
    assert feasible_interval(q) == (mpq(-1, 4), mpq(3, 4))
    with pytest.raises(InfeasibleMorph):
        morph(q, MorphParams(mpq(4, 5)))
    with pytest.raises(InfeasibleMorph):
        morph(q, MorphParams(mpq(-1, 3)))
    # reaching the boundary zeroes two arcs at once
    with pytest.raises(InfeasibleMorph):
        morph(q, MorphParams(mpq(-1, 4)))


def test_morph_to_marked_triangle_boundary():
    q = quad_from_pi(1, [mpq(1, 4), mpq(1, 2), mpq(1, 2), mpq(3, 4)])
    r = morph(q, MorphParams(mpq(1, 2)))
    assert r.arcs_pi == (mpq(3, 4), mpq(0), mpq(1), mpq(1, 4))
    assert r.is_marked_triangle


def test_morph_preserves_C_and_angles():
    rng = np.random.default_rng(11)
    for _ in range(200):
        q = random_convex(rng)
        lo, hi = feasible_interval(q)
        t = lo + (hi - lo) * mpq(float(rng.uniform(0.01, 0.99)))
        r = morph(q, MorphParams(t, float(rng.uniform(0.5, 2))))
        assert interior_angles_pi(r) == interior_angles_pi(q)
        assert metrics(r).C == pytest.approx(metrics(q).C, abs=1e-10)


def test_recut_examples():
    q = quad_from_pi(1, [mpq(1, 6), mpq(1, 2), mpq(2, 3), mpq(2, 3)])
    assert recut(q, DiagonalChoice.D13).arcs_pi == (mpq(1, 2), mpq(1, 6), mpq(2, 3), mpq(2, 3))
    assert recut(q, DiagonalChoice.D24).arcs_pi == (mpq(1, 6), mpq(2, 3), mpq(1, 2), mpq(2, 3))


def test_recut_matches_planar_reflection():
    for seed in range(100):
        q = random_convex(seed)
        P = vertices(q)
        r13 = vertices(recut(q, DiagonalChoice.D13))
        assert r13[1] == pytest.approx(_flip(P[1], P[0], P[2]), abs=1e-12)
        for k in (0, 2, 3):
            assert r13[k] == pytest.approx(P[k], abs=1e-12)
        r24 = vertices(recut(q, DiagonalChoice.D24))
        assert r24[2] == pytest.approx(_flip(P[2], P[1], P[3]), abs=1e-12)
        for k in (0, 1, 3):
            assert r24[k] == pytest.approx(P[k], abs=1e-12)


def test_recut_involution_and_side_permutation():
    for seed in range(200):
        q = random_convex(seed)
        for d in DiagonalChoice:
            r = recut(q, d)
            assert recut(r, d) == q
            assert Counter(metrics(r).sides) == Counter(metrics(q).sides)
            assert metrics(r).C == pytest.approx(metrics(q).C, abs=1e-12)


def test_recut_marked_triangle():
    # recutting along a diagonal through the marked point still works
    tri = quad_from_pi(1, [mpq(1), mpq(1, 2), mpq(1, 2), mpq(0)])
    assert recut(tri, DiagonalChoice.D13).arcs_pi == (H, mpq(1), H, mpq(0))
    assert recut(tri, DiagonalChoice.D24).arcs_pi == tri.arcs_pi


def test_morph_to_max_diag_angle_reaches_right_angle():
    q = quad_from_pi(1, [mpq(1, 4), mpq(3, 4), mpq(1, 4), mpq(3, 4)])
    r, t = morph_to_max_diag_angle(q)
    assert t == mpq(1, 4)
    assert r.arcs_pi == (H,) * 4


def test_morph_to_max_diag_angle_clamps():
    q = quad_from_pi(1, [mpq(1, 10), mpq(1, 5), mpq(1, 10), mpq(8, 5)])
    r, t = morph_to_max_diag_angle(q)
    assert t == mpq(1, 5)
    assert r.arcs_pi == (mpq(3, 10), mpq(0), mpq(3, 10), mpq(7, 5))
    assert r.is_marked_triangle


@pytest.mark.parametrize("pair", list(OppositePair))
def test_perturb_examples(pair):
    q = quad_from_pi(1, [mpq(1, 3), mpq(1, 2), mpq(2, 3), mpq(1, 2)])
    d = mpq(1, 20)
    a0, a1 = interior_angles_pi(q), interior_angles_pi(perturb_opposite_angles(q, pair, d))
    i, j, k, l = (0, 2, 1, 3) if pair is OppositePair.P1P3 else (1, 3, 0, 2)
    assert a1[i] == a0[i] + d and a1[j] == a0[j] - d
    assert a1[k] == a0[k] and a1[l] == a0[l]


def test_reachability_walk():
    # any nearby quad with the same diameter is two perturbations and a morph away
    rng = np.random.default_rng(3)
    for _ in range(50):
        q = random_convex(rng, min_arc=0.4)
        target = random_convex(rng, min_arc=0.4)
        a0, at = interior_angles_pi(q), interior_angles_pi(target)
        d1, d2 = at[0] - a0[0], at[1] - a0[1]
        if max(abs(d1), abs(d2)) > mpq(1, 16):
            continue
        w = perturb_opposite_angles(q, OppositePair.P1P3, d1)
        w = perturb_opposite_angles(w, OppositePair.P2P4, d2)
        assert interior_angles_pi(w) == at
        t = target.arcs_pi[0] - w.arcs_pi[0]
        w = morph(w, MorphParams(t, target.D / w.D))
        assert w.arcs_pi == target.arcs_pi
        assert w.D == pytest.approx(target.D, rel=1e-15)


def test_perturb_square_example():
    sq = quad_from_pi(1, [H] * 4)
    d = mpq(1, 12)
    r = perturb_opposite_angles(sq, OppositePair.P1P3, d)
    assert interior_angles_pi(r) == (H + d, H, H - d, H)
    assert perturb_opposite_angles(sq, OppositePair.P2P4, mpq(0)) == sq


@pytest.mark.parametrize("pair", list(OppositePair))
def test_perturb_inverse_and_C(pair):
    rng = np.random.default_rng(8)
    for _ in range(100):
        q = random_convex(rng, min_arc=0.2)
        d = mpq(int(rng.integers(-1000, 1000)), 40000)
        r = perturb_opposite_angles(q, pair, d)
        assert perturb_opposite_angles(r, pair, -d) == q
        assert metrics(r).C == pytest.approx(metrics(q).C, abs=1e-12)
