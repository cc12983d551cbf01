"""An exact certificate on one fiber of four-line configurations.

With Pythagorean slopes every side length is rational, so interpolating the
signed area A and Brahmagupta's B^2 over a grid is an exact rational solve.
The fit shows A = kappa*x*y and B^2 = mu*(x*y)^2 with kappa^2 = mu, which is
the formula on the whole fiber at once.
"""

from fractions import Fraction

from quadlab.fiber import FiberPoint, FiberSlopes, interpolate_fiber_polynomials, signed_sides_and_area

slopes = FiberSlopes(Fraction(3, 4), Fraction(5, 12))
rep = interpolate_fiber_polynomials(slopes)

print("A(x, y) coefficients:")
for (i, j), c in sorted(rep.coeffs_A.items()):
    print(f"  x^{i} y^{j}: {c}")
print(f"kappa = {rep.kappa}, mu = {rep.mu}, kappa^2 - mu = {rep.residual_kappa_sq_mu}")
print("certified:", rep.certified())

# On the axes the quad is a butterfly with zero signed area.
sa = signed_sides_and_area(FiberPoint(slopes, 2, 0))
print("\nbutterfly at (2, 0): sides", [str(v) for v in sa.sides], "area", sa.A)
print("ab + cd =", sa.a * sa.b + sa.c * sa.d)

# Not every rational slope works.
try:
    FiberSlopes(Fraction(1, 2), Fraction(3, 4))
except ValueError as exc:
    print("\nrejected:", exc)
