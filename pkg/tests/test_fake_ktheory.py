import random

import pytest

from quasinv.demazure import exp_basis
from quasinv.errors import DomainError
from quasinv.fake_ktheory import (
    INCONCLUSIVE,
    MEMBER,
    NON_MEMBER,
    IntSeries,
    bg_series,
    distinguishing_invariant,
    laurent_to_t_series,
    legendre,
    n_b,
    qmb,
)
from quasinv.laurent import LaurentElement


def test_legendre_small_cases():
    assert legendre(2, 7) == 1  # 3^2 = 2 mod 7
    assert legendre(3, 5) == -1  # squares mod 5 are 1 and 4
    assert legendre(17, 2) == 1  # 17 = 1 mod 8
    assert legendre(5, 2) == -1  # 5 mod 8 is not a square


def test_legendre_undefined():
    with pytest.raises(DomainError):
        legendre(10, 5)


def test_legendre_multiplicative():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for a in range(1, p):
            for b in range(1, p):
                assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_n_b_examples():
    assert n_b({}) == {"N_B": 1, "signs": {}, "is_standard": True}
    assert n_b({3: 2, 5: 3})["N_B"] == 6
    result = n_b({2: 5})
    assert result["N_B"] == 5 and result["signs"][2] == -1


def test_n_b_validation():
    with pytest.raises(DomainError):
        n_b({3: 3})  # not coprime
    with pytest.raises(DomainError):
        n_b({2: 3})  # needs 1 mod 4 at the even prime
    with pytest.raises(DomainError):
        n_b({4: 3})  # not prime
    with pytest.raises(DomainError):
        n_b({5: 0})


def test_int_series_ring_and_inverse():
    one_plus_t = IntSeries([1, 1], 8)
    inv = one_plus_t.inverse()
    assert list(inv.coeffs) == [1, -1, 1, -1, 1, -1, 1, -1]
    assert one_plus_t * inv == IntSeries([1], 8)


def test_membership_level_zero():
    gen = IntSeries([0, 0, 3, 1], 10)
    ring = qmb(gen, 0, 10)
    assert ring.membership(IntSeries([5, 3, 1, 7], 10)) == MEMBER


def test_membership_leading_coefficient_example():
    gen = IntSeries([0, 0, 3, 1], 12)
    # through order 2 only the leading coefficient is visible
    assert qmb(gen, 1, 3).membership(IntSeries([0, 0, 3], 3)) == MEMBER
    # with more terms retained, the tail fails integrality
    assert qmb(gen, 1, 12).membership(IntSeries([0, 0, 3], 12)) == NON_MEMBER
    assert qmb(gen, 1, 12).membership(IntSeries([0, 0, 1], 12)) == NON_MEMBER


def test_membership_ideal_elements():
    gen = IntSeries([0, 0, 3, 1], 14)
    for m in range(1, 4):
        ring = qmb(gen, m, 14)
        f = (gen**m) * IntSeries([0, 1], 14)
        assert ring.membership(f) == MEMBER
        assert ring.recursion_verified


def test_membership_inconclusive_when_order_too_small():
    gen = IntSeries([0, 0, 3, 1], 12)
    ring = qmb(gen, 3, 4)  # cannot reach order t^6
    assert ring.membership(IntSeries([0, 0, 3], 4)) == INCONCLUSIVE


def test_membership_monotone():
    bg = bg_series(13)
    rng = random.Random(5)
    for m in range(3):
        lower = qmb(bg, m, 13)
        upper = qmb(bg, m + 1, 13)
        for _ in range(10):
            coeffs = [rng.randint(-2, 2) for _ in range(11)]
            f = (upper.generator ** (m + 1)) * IntSeries(coeffs, 13) + rng.randint(-3, 3)
            assert upper.membership(f) == MEMBER
            assert lower.membership(f) == MEMBER


def test_generator_validation():
    with pytest.raises(DomainError):
        qmb(IntSeries([1, 0, 3], 8), 1, 8)
    with pytest.raises(DomainError):
        qmb(IntSeries([0, 1, 3], 8), 1, 8)
    with pytest.raises(DomainError):
        qmb(IntSeries([0, 0, 0, 1], 8), 1, 8)


def test_distinguishing_invariant():
    gen = IntSeries([0, 0, 3, 1], 8)
    res = distinguishing_invariant(gen, 2, 5)
    assert res["rank"] == 2 and res["generator_coefficient"] == 3 and res["square_zero"]
    assert distinguishing_invariant(gen, 1, 3)["rank"] == 1
    trivial = distinguishing_invariant(IntSeries([0, 0, 1, -1], 8), 1, 7)
    assert trivial["rank"] == 2 and trivial["generator_coefficient"] == 1


def test_distinguishing_depends_only_on_leading_coefficient():
    rng = random.Random(77)
    for _ in range(10):
        tail = [rng.randint(-4, 4) for _ in range(5)]
        gen = IntSeries([0, 0, 3] + tail, 10)
        assert distinguishing_invariant(gen, 2, 5)["rank"] == 2
        assert distinguishing_invariant(gen, 2, 3)["rank"] == 1


def test_bg_series_expansion():
    bg = bg_series(8)
    assert list(bg.coeffs) == [0, 0, 1, -1, 1, -1, 1, -1]


def test_bg_series_is_completed_character():
    # z - 2 + 1/z maps to t^2/(1+t) under z = 1 + t; recomputed both ways
    bg = bg_series(10)
    image = laurent_to_t_series(LaurentElement.delta(), 10)
    assert bg == image


def test_character_images_respect_filtration():
    bg = bg_series(13)
    for m in range(3):
        ring = qmb(bg, m, 13)
        for el in exp_basis(m, (-3, 3)).elements:
            assert ring.membership(laurent_to_t_series(el, 13)) == MEMBER
    ring1 = qmb(bg, 1, 13)
    z_img = laurent_to_t_series(LaurentElement.z_power(1), 13)
    assert ring1.membership(z_img) == NON_MEMBER
