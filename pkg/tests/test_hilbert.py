import pytest

from quasinv.errors import ReconstructionError
from quasinv.hilbert import HilbertSeries, gorenstein_shift, hilbert_from_basis


def test_polynomial_line_over_squares():
    # Q[x] is free over Q[x^2] with basis 1, x
    dims = [1] * 13
    series = hilbert_from_basis(dims, [2])
    assert series.numerator == (1, 1)
    assert series.dims(12) == dims


def test_multiplicity_one_line():
    dims = [1, 0] + [1] * 11
    series = hilbert_from_basis(dims, [2])
    assert series.numerator == (1, 0, 0, 1)
    assert series.numerator_string() == "1 + t^3"


@pytest.mark.parametrize("m", range(5))
def test_rank_one_general_multiplicity(m):
    dims = [1 if (d % 2 == 0 or d >= 2 * m + 1) else 0 for d in range(4 * m + 13)]
    series = hilbert_from_basis(dims, [2])
    expected = [1] + [0] * 2 * m + [1]
    assert list(series.numerator) == expected


def test_degree_bound_too_small():
    with pytest.raises(ReconstructionError):
        hilbert_from_basis([1, 1, 1], [2])
    # dims that stabilize to no polynomial numerator within range
    with pytest.raises(ReconstructionError):
        hilbert_from_basis([1, 2, 4, 8, 16, 32, 64, 128, 256], [2])


def test_expansion_matches():
    series = HilbertSeries([1, 0, 0, 1], [2], verified_through=8)
    assert series.dims(8) == [1, 0, 1, 1, 1, 1, 1, 1, 1]


def test_gorenstein_shift_polynomial_plane():
    series = HilbertSeries([1], [1, 1], verified_through=8)
    assert gorenstein_shift(series, 2) == 2


@pytest.mark.parametrize("m", range(4))
def test_gorenstein_shift_rank_one(m):
    series = HilbertSeries([1] + [0] * 2 * m + [1], [2], verified_through=12)
    assert gorenstein_shift(series, 1) == 1 - 2 * m


def test_gorenstein_shift_fails_on_non_palindromic():
    series = HilbertSeries([1, 2, 0, 1], [2], verified_through=8)
    assert gorenstein_shift(series, 1) is None


def test_shift_needs_one_degree_per_dimension():
    series = HilbertSeries([1], [2], verified_through=8)
    with pytest.raises(ValueError):
        gorenstein_shift(series, 2)
