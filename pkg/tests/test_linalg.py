import random
from fractions import Fraction

import pytest

from quasinv.fields import Cyclotomic
from quasinv.linalg import IncrementalSpan, in_span, nullspace, rank, solve_exact


def test_identity_has_trivial_kernel():
    assert nullspace([[1, 0], [0, 1]]) == []


def test_zero_matrix_kernel_is_standard_basis():
    basis = nullspace([[0, 0], [0, 0]])
    assert basis == [[1, 0], [0, 1]]


def test_rank_one_matrix():
    basis = nullspace([[1, 1], [2, 2]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and any(v)


def test_rank_nullity_randomized():
    rng = random.Random(99)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        assert rank(m) + len(nullspace(m)) == ncols
        for v in nullspace(m):
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_rank_nullity_cyclotomic():
    rng = random.Random(3)
    z = Cyclotomic.zeta(3)
    for _ in range(10):
        m = [
            [Cyclotomic(3, [rng.randint(-2, 2), rng.randint(-2, 2)]) for _ in range(3)]
            for _ in range(2)
        ]
        assert rank(m) + len(nullspace(m)) == 3
        for v in nullspace(m):
            for row in m:
                acc = Cyclotomic.from_rational(3, 0)
                for a, b in zip(row, v):
                    acc = acc + a * b
                assert not acc


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        rank([[Cyclotomic.zeta(3), Cyclotomic.zeta(4)]])


def test_solve_exact():
    sol = solve_exact([[1, 1], [0, 1]], [3, 1])
    assert sol == [Fraction(2), Fraction(1)]
    assert solve_exact([[1, 1], [1, 1]], [0, 1]) is None


def test_in_span():
    vecs = [[1, 0, 1], [0, 1, 1]]
    assert in_span(vecs, [1, 1, 2])
    assert not in_span(vecs, [1, 1, 1])


def test_incremental_span_matches_rank():
    rng = random.Random(17)
    for _ in range(15):
        vectors = [
            [Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(6)
        ]
        span = IncrementalSpan(4)
        added = sum(1 for v in vectors if span.add(v))
        assert added == rank(vectors) if any(any(v) for v in vectors) else added == 0
        assert span.dim() == added
        for v in vectors:
            assert span.contains(v)
