"""Divided difference operators, their exponential analogues, and the
exponentiation map into completed power series.

Normalizations: the classical operator is (p - s p)/alpha and the
multiplicity-m operator is (p - s p)/alpha^(2m+1), both without a 1/2; these
are fixed only up to a nonzero constant, and with this integer-friendly
choice the operator sends x^(2k+2m+1) to 2 x^(2k).  The constant 2 is
recorded in reports.
"""

from __future__ import annotations

from fractions import Fraction

from quasinv.errors import DomainError
from quasinv.groups import Multiplicity, ReflectionGroup
from quasinv.laurent import LaurentElement, exact_div, order_at_one
from quasinv.poly import Polynomial, exact_quotient_by_power
from quasinv.quasi import is_quasi_invariant

NORMALIZATION_CONSTANT = 2  # value of delta_m on x^(2m+1) in rank one

__all__ = [
    "delta_classical",
    "delta_m",
    "lambda_op",
    "is_exp_quasi_invariant",
    "ExpQuasiRing",
    "exp_basis",
    "TruncatedExpSeries",
    "chern_character",
    "NORMALIZATION_CONSTANT",
]


def _reflection_of(group: ReflectionGroup, h) -> int:
    ident = group.identity_index()
    for i in group.stabilizer(h):
        if i != ident:
            return i
    raise ValueError("hyperplane without a reflection")


def delta_classical(group: ReflectionGroup, h, p: Polynomial) -> Polynomial:
    """(p - s_H p) / alpha_H; the division is exact for every polynomial."""
    if h.stabilizer_order != 2:
        raise DomainError("divided differences need a genuine reflection")
    s = _reflection_of(group, h)
    diff = p - group.act(s, p)
    return exact_quotient_by_power(diff, h.alpha, 1)


def delta_m(group: ReflectionGroup, h, mult: Multiplicity, p: Polynomial) -> Polynomial:
    """(p - s_H p) / alpha_H^(2 m_H + 1), defined on quasi-invariants of
    multiplicity m; raises a DomainError off that domain."""
    if h.stabilizer_order != 2:
        raise DomainError("divided differences need a genuine reflection")
    if not is_quasi_invariant(group, mult, p):
        raise DomainError(
            "argument is not quasi-invariant of the given multiplicity; the "
            "divided difference of this order is undefined on it"
        )
    m_h = mult.of(h)
    s = _reflection_of(group, h)
    diff = p - group.act(s, p)
    return exact_quotient_by_power(diff, h.alpha, 2 * m_h + 1)


# -- exponential side (rank one) ------------------------------------------------------


_ONE_MINUS_Z2 = LaurentElement({0: 1, 4: -1})  # 1 - z^2 in w-units
_ONE_MINUS_Z = LaurentElement({0: 1, 2: -1})


def lambda_op(f: LaurentElement) -> LaurentElement:
    """The exponential divided difference (f - s f)/(1 - z^2) on the
    character ring of the rank-one torus; always an exact Laurent quotient
    and a twisted derivation: L(fg) = L(f) g + s(f) L(g)."""
    diff = f - f.involution()
    if not diff:
        return LaurentElement.zero()
    return exact_div(diff, _ONE_MINUS_Z2)


def is_exp_quasi_invariant(m: int, f: LaurentElement) -> bool:
    """Whether lambda_op(f) is divisible by (1 - z)^(2m) after clearing
    z-denominators, i.e. vanishes to order >= 2m at z = 1."""
    if m < 0:
        raise DomainError("multiplicity must be non-negative")
    if not f.has_integer_z_exponents():
        raise DomainError("exponential quasi-invariance is tested on the character ring")
    lam = lambda_op(f)
    if not lam:
        return True
    return order_at_one(lam) >= 2 * m


class ExpQuasiRing:
    """The multiplicity-m ring of exponential quasi-invariants, enumerated on
    a window of z-exponents: delta^j for j < m together with delta^m z^k for
    k in the window, delta = z - 2 + 1/z."""

    def __init__(self, m: int, window):
        lo, hi = window
        if lo > -1 or hi < 1:
            raise DomainError(
                f"window [{lo}, {hi}] too small: must contain z^-1 and z"
            )
        self.m = m
        self.window = (lo, hi)
        delta = LaurentElement.delta()
        elements = []
        labels = []
        for j in range(m):
            elements.append(delta**j)
            labels.append(f"delta^{j}")
        dm = delta**m
        for k in range(lo, hi + 1):
            elements.append(dm * LaurentElement.z_power(k))
            labels.append(f"delta^{m} z^{k}")
        self.elements = elements
        self.labels = labels

    def contains(self, f: LaurentElement) -> bool:
        """Membership in the integral span Z + Z delta + ... + Z delta^(m-1)
        + delta^m Z[z, 1/z], decided on reduced coefficients."""
        if not f.has_integer_z_exponents():
            return False
        m = self.m
        even = (f + f.involution()) * Fraction(1, 2)
        # expand the symmetric part in powers of delta (leading z-coefficient
        # of delta^k is 1, so peeling from the top is exact)
        delta = LaurentElement.delta()
        coeffs = {}
        rest = even
        while rest:
            k = rest.max_w_exp() // 2
            if k < 0:
                return False  # symmetric part cannot have negative top degree
            c = rest.z_coefficient(k)
            coeffs[k] = c
            rest = rest - delta**k * c
        for j in range(m):
            if coeffs.get(j, Fraction(0)).denominator != 1:
                return False
        head = LaurentElement.zero()
        for j in range(m):
            c = coeffs.get(j)
            if c:
                head = head + delta**j * c
        tail = f - head
        if not tail:
            return True
        try:
            quot = exact_div(tail, delta**m)
        except ArithmeticError:
            return False
        return quot.is_integral()


def exp_basis(m: int, window) -> ExpQuasiRing:
    """Enumerate the exponential quasi-invariants of multiplicity m on a
    window; every listed element passes the divided-difference test."""
    ring = ExpQuasiRing(m, window)
    for el in ring.elements:
        if not is_exp_quasi_invariant(m, el):
            raise ArithmeticError("enumerated element fails the defining condition")
    return ring


# -- exponentiation into completed series ------------------------------------------------


class TruncatedExpSeries:
    """Power series in x over Q, exact through order N (exclusive)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        coeffs = [Fraction(c) for c in coeffs[:order]]
        coeffs += [Fraction(0)] * (order - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    def __mul__(self, other: "TruncatedExpSeries") -> "TruncatedExpSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j, b in enumerate(other.coeffs[: n - i]):
                    if b:
                        out[i + j] += a * b
        return TruncatedExpSeries(out, n)

    def __add__(self, other: "TruncatedExpSeries") -> "TruncatedExpSeries":
        n = min(self.order, other.order)
        return TruncatedExpSeries(
            [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedExpSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def odd_valuation(self):
        """Least odd exponent with nonzero coefficient, or None."""
        for n in range(1, self.order, 2):
            if self.coeffs[n]:
                return n
        return None

    def even_coeffs(self):
        return self.coeffs[0 :: 2]

    def __repr__(self):
        parts = [f"{c}*x^{n}" for n, c in enumerate(self.coeffs) if c]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(x^{self.order})"


def character_exponential(f: LaurentElement, order: int) -> TruncatedExpSeries:
    """Substitute z = exp(x) into a Laurent polynomial with integer
    z-exponents, truncated at the given x-order."""
    if not f.has_integer_z_exponents():
        raise DomainError("exponentiation is defined on integer characters")
    coeffs = []
    fact = Fraction(1)
    for n in range(order):
        if n:
            fact *= n
        total = Fraction(0)
        for e, c in f.terms.items():
            k = e // 2
            total += c * (k**n)
        coeffs.append(total / fact)
    return TruncatedExpSeries(coeffs, order)


def chern_character(f: LaurentElement, m: int, order: int):
    """Exponentiate a multiplicity-m exponential quasi-invariant and report
    the completed-ring shape of the image: the even part is unconstrained
    while the odd part must vanish to order at least 2m+1."""
    if not is_exp_quasi_invariant(m, f):
        raise DomainError("element is not an exponential quasi-invariant of this multiplicity")
    series = character_exponential(f, order)
    val = series.odd_valuation()
    passes = val is None or val >= 2 * m + 1
    return series, {
        "odd_valuation": val,
        "odd_vanishing_required": 2 * m + 1,
        "in_completed_ring": passes,
    }
