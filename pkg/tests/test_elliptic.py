from fractions import Fraction

import pytest

from quasinv.elliptic import (
    check_functional_equation,
    ell_g_generator,
    ell_graded_dimension,
    ell_sheaf_dims,
    invariant_anti_split,
    jacobi_theta,
    section_basis,
    theta,
    theta_divisibility,
    zq_exact_divide,
)
from quasinv.errors import DomainError
from quasinv.linalg import rank
from quasinv.series import ZQSeries

N = 12
WINDOW = (-8, 8)


@pytest.fixture(scope="module")
def tp():
    return theta("product", WINDOW, N).series


@pytest.fixture(scope="module")
def jac():
    return jacobi_theta(WINDOW, N).series


def test_q0_parts(tp):
    assert tp.q_slice(0) == {0: Fraction(1), 2: Fraction(-1)}
    ts = theta("sum", WINDOW, N).series
    assert ts.q_slice(0) == {0: Fraction(1), 2: Fraction(-1)}


def test_triple_product_identity(tp):
    assert theta("sum", WINDOW, N).series == tp


def test_window_too_small_rejected():
    with pytest.raises(DomainError):
        theta("product", (-1, 1), N)
    with pytest.raises(DomainError):
        theta("product", (-3, 3), N)  # support needs more room at this order


def test_jacobi_q0(jac):
    assert jac.q_slice(0) == {-1: Fraction(-1), 1: Fraction(1)}


def test_jacobi_vs_theta(tp, jac):
    assert jac == tp.mul_monomial(Fraction(-1, 2), 0) * -1


def test_theta_inversion_identity(tp):
    assert tp.involution() == tp.mul_monomial(-1, 0) * -1


def test_jacobi_is_odd(jac):
    assert jac.involution() == jac * -1


def test_theta_shift_identity(tp):
    shifted = tp.shift_q()
    target = (tp.mul_monomial(-1, 0) * -1).truncate_q(shifted.q_order)
    assert shifted == target


def test_functional_equation_constants():
    assert check_functional_equation(ZQSeries.one(N), 0)["holds"]


def test_functional_equation_jacobi_squared(jac):
    assert check_functional_equation(jac * jac, 1)["holds"]


def test_functional_equation_theta_fails(tp):
    assert not check_functional_equation(tp, 1)["holds"]


@pytest.mark.parametrize("n", range(1, 6))
def test_section_dimensions(n):
    space = section_basis(n, N)
    assert space.dim() == 2 * n
    for el in space.basis:
        assert el.certificate["holds"]


def test_sections_contain_jacobi_squares(jac):
    space = section_basis(1, N)
    j2 = jac * jac
    j2_neg = j2.negate_z()
    c1 = space.coordinates(j2)
    c2 = space.coordinates(j2_neg)
    assert c1 is not None and c2 is not None
    assert c1 != c2
    # q^0 rows of the two coordinate tuples are independent
    mat = [[col[0] for col in c1], [col[0] for col in c2]]
    assert rank(mat) == 2


def test_sections_contain_doubled_jacobi(jac):
    space = section_basis(2, N)
    jz2 = jac.square_z()
    assert space.coordinates(jz2) is not None
    assert jz2.involution() == jz2 * -1  # anti-invariant


def test_invariant_anti_split_dimensions():
    for n in range(1, 6):
        inv, anti = invariant_anti_split(section_basis(n, N))
        assert len(inv) == n + 1
        assert len(anti) == n - 1


def test_looijenga_monomials_independent(jac):
    j2 = jac * jac
    j2_neg = j2.negate_z()
    for n in range(1, 6):
        monos = [(j2**i) * (j2_neg ** (n - i)) for i in range(n + 1)]
        ws = sorted({w for e in monos for (w, s) in e.coeffs if s == 0})
        mat = [[e.coeffs.get((w, 0), Fraction(0)) for w in ws] for e in monos]
        assert rank(mat) == n + 1


def test_theta_divisibility(jac, tp):
    j2 = jac * jac
    assert theta_divisibility(j2, 1)["verdict"] is True
    assert theta_divisibility(j2.negate_z(), 1)["verdict"] is False
    jz2 = jac.square_z()
    assert theta_divisibility(jz2, 1)["verdict"] is True
    assert theta_divisibility(jz2, 2)["verdict"] is False


def test_zq_exact_divide_reconstructs(tp, jac):
    j4 = jac**4
    quotient = zq_exact_divide(j4, jac * jac)
    assert quotient is not None
    assert quotient * (jac * jac) == j4.truncate_q(quotient.q_order)
    assert zq_exact_divide(ZQSeries.one(N), tp) is None


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(1, 6))
def test_graded_dimension_formula(m, n):
    result = ell_graded_dimension(m, n, N)
    assert result["dimension"] == (n + 1) + max(0, n - m - 1)
    if m == 0:
        assert result["dimension"] == 2 * n


@pytest.mark.parametrize("m", range(6))
def test_sheaf_dims(m):
    r = ell_sheaf_dims(m)
    assert (r["h0"], r["h1"]) == (1, 2 * m + 2)
    assert r["w_split"] == (m + 1, m + 1)
    assert r["euler_consistent"]


@pytest.mark.parametrize("m", range(3))
def test_generator_of_anti_module(m):
    report = ell_g_generator(m, None, 10)
    assert report["simplification_holds"]
    assert report["anti_invariant"]
    assert report["vanishing_order_lower"]
    assert report["vanishing_order_exact"]


def test_triple_product_at_order_sixteen():
    window = (-10, 10)
    assert theta("sum", window, 16).series == theta("product", window, 16).series


def test_section_dimension_n6():
    assert section_basis(6, N).dim() == 12


def test_generator_window_too_small():
    with pytest.raises(DomainError):
        ell_g_generator(2, (-3, 3), 10)


def test_theta_divisibility_inconclusive_at_empty_range():
    empty = ZQSeries({(0, 0): 1}, 0)
    assert theta_divisibility(empty, 1)["verdict"] == "inconclusive"
