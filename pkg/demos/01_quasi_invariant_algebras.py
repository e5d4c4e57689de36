"""Tour of the core solver: bases, Hilbert series, freeness, duality shift.

A polynomial p is quasi-invariant of multiplicity m for a reflection group W
when, for every reflection hyperplane, s_H(p) - p is divisible by the
2 m_H-th power of the hyperplane's linear form.  These spaces interpolate
between all polynomials (m = 0) and the invariant ring (m -> infinity).
"""

from quasinv.groups import Multiplicity, parse_group
from quasinv.poly import Polynomial
from quasinv.quasi import (
    filtration_check,
    freeness_certificate,
    hilbert,
    is_quasi_invariant,
    quasi_basis,
)

# Rank one: the sign action on one variable.  Quasi-invariants of
# multiplicity m are spanned by even powers and odd powers from x^(2m+1) on.
A1 = parse_group("A1")
x = Polynomial.variable(A1.variables, "x")
m2 = Multiplicity.constant(A1, 2)
print("x^4 quasi-invariant at m=2:", is_quasi_invariant(A1, m2, x**4))
print("x^3 quasi-invariant at m=2:", is_quasi_invariant(A1, m2, x**3))
print("dims through degree 8:", quasi_basis(A1, m2, 8).dims())
print("Hilbert series:", hilbert(A1, m2, 12))
print()

# The dihedral group of order 6 in complex coordinates (z1, z2): three
# reflection hyperplanes z1 = zeta^j z2 in a single orbit.
W = parse_group("I2(3)")
print(W)
for h in W.hyperplanes:
    print("  ", h)
m1 = Multiplicity.constant(W, 1)
series = hilbert(W, m1, 20)
print("Hilbert series:", series)
print("numerator at t=1 (module rank):", series.numerator_at_one())

# Freeness over the invariant ring, with the duality shift read off the
# functional equation of the Hilbert series.
cert = freeness_certificate(W, m1, 20)
print("status:", cert.status, "| generator degrees:", cert.generator_degrees())
print("shift from the series:", cert.gorenstein_shift,
      "| predicted dimV - 2 sum m:", cert.predicted_shift)
print()

# The filtration is strict and converges to the invariants.
report = filtration_check(A1, Multiplicity.constant(A1, 1), m2, 8)
print("Q_2 inside Q_1:", report["included"],
      "| witness of strictness:", report["strict_witness"])
print("intersection of all layers = invariants:",
      report["intersection_equals_invariants"])
