import math
import random
from fractions import Fraction

import pytest

from quasinv.fields import Cyclotomic
from quasinv.poly import (
    Polynomial,
    divide_by_linear,
    divisibility_order,
    exact_quotient_by_power,
    monomials_of_degree,
)

VARS = ("x", "y")


def x_y():
    return Polynomial.variable(VARS, "x"), Polynomial.variable(VARS, "y")


def test_basic_arithmetic():
    x, y = x_y()
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (x + 1) ** 2 == x * x + 2 * x + 1
    assert not (p - p)


def test_degree_of_product_adds():
    rng = random.Random(11)
    for _ in range(20):
        p = _random_poly(rng)
        q = _random_poly(rng)
        if p and q:
            assert (p * q).degree() == p.degree() + q.degree()


def _random_poly(rng, nterms=4, maxdeg=4):
    terms = {}
    for _ in range(nterms):
        exp = (rng.randint(0, maxdeg), rng.randint(0, maxdeg))
        terms[exp] = Fraction(rng.randint(-4, 4))
    return Polynomial(VARS, terms)


def test_divisibility_order_monomial():
    x, y = x_y()
    assert divisibility_order(x * x * y, x) == 2


def test_divisibility_order_factored():
    x, y = x_y()
    p = (x - y) ** 3 * (x + y)
    assert divisibility_order(p, x - y) == 3


def test_divisibility_order_unit_and_zero():
    x, y = x_y()
    one = Polynomial.constant(VARS, 1)
    assert divisibility_order(one, x) == 0
    assert divisibility_order(Polynomial.zero(VARS), x) == math.inf


def test_divisibility_second_variable_pivot():
    # forms whose first nonzero coefficient is not in the leading slot
    x, y = x_y()
    assert divisibility_order(y**3 * x, y) == 3
    assert divisibility_order((x + y) ** 2 * y, y) == 1
    assert divisibility_order(x**2, y) == 0


def test_divisibility_order_is_additive():
    rng = random.Random(23)
    x, y = x_y()
    forms = [x, y, x - y, x + 2 * y, y + x * 0 + Fraction(1, 2) * x]
    for _ in range(30):
        alpha = forms[rng.randrange(len(forms))]
        p = _random_poly(rng) * alpha ** rng.randint(0, 2)
        q = _random_poly(rng) * alpha ** rng.randint(0, 2)
        if not p or not q:
            continue
        assert divisibility_order(p * q, alpha) == divisibility_order(
            p, alpha
        ) + divisibility_order(q, alpha)


def test_non_linear_form_rejected():
    x, y = x_y()
    with pytest.raises(ValueError):
        divisibility_order(x, x * x)
    with pytest.raises(ValueError):
        divisibility_order(x, x + 1)


def test_divide_by_linear_reconstructs():
    rng = random.Random(5)
    x, y = x_y()
    for alpha in (x, y, x - y, 3 * x + y):
        for _ in range(10):
            p = _random_poly(rng)
            q, r = divide_by_linear(p, alpha)
            assert q * alpha + r == p


def test_exact_quotient_by_power():
    x, y = x_y()
    p = (x - y) ** 4 * (1 + x)
    assert exact_quotient_by_power(p, x - y, 4) == 1 + x
    with pytest.raises(ArithmeticError):
        exact_quotient_by_power(x, y, 1)


def test_divisibility_over_cyclotomic_field():
    zeta = Cyclotomic.zeta(6)
    x, y = x_y()
    alpha = x - zeta * y
    p = alpha ** 2 * (x + y)
    assert divisibility_order(p, alpha) == 2


def test_substitute_matches_direct_expansion():
    x, y = x_y()
    p = x**3 * y + 2 * x * y - y**2
    images = {"x": x + y, "y": y}
    expected = (x + y) ** 3 * y + 2 * (x + y) * y - y**2
    assert p.substitute(images) == expected


def test_monomials_graded_lex():
    monos = monomials_of_degree(VARS, 2)
    assert monos == [(0, 2), (1, 1), (2, 0)]
