"""Tests for exact dense and sparse linear algebra."""

from fractions import Fraction

import pytest

from utils.linalg import (
    SingularMatrixError,
    SparseEchelon,
    coordinates,
    identity,
    in_span,
    inverse,
    matmul,
    nullspace,
    rank,
    solve,
)
from utils.scalars import PrimeField, RationalField

Q = RationalField()


def _q(rows):
    return [[Fraction(v) for v in row] for row in rows]


def test_rank_and_nullspace():
    rows = _q([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(rows, 3) == 2
    kernel = nullspace(rows, 3, Q)
    assert len(kernel) == 1
    for row in rows:
        assert sum(a * b for a, b in zip(row, kernel[0])) == 0


def test_solve_consistent_and_inconsistent():
    a = _q([[1, 1], [1, -1]])
    assert solve(a, [Fraction(3), Fraction(1)], 2, Q) == [Fraction(2), Fraction(1)]
    singular = _q([[1, 1], [1, 1]])
    assert solve(singular, [Fraction(1), Fraction(2)], 2, Q) is None


def test_inverse_round_trip():
    m = _q([[2, 1], [1, 1]])
    inv = inverse(m, 2, Q)
    assert matmul(m, inv, 2, 2, Q) == identity(2, Q)
    with pytest.raises(SingularMatrixError):
        inverse(_q([[1, 2], [2, 4]]), 2, Q)


def test_span_membership_over_a_prime_field():
    f3 = PrimeField(p=3)
    basis = [[f3.coerce(1), f3.coerce(1), f3.coerce(0)]]
    assert in_span(basis, [f3.coerce(2), f3.coerce(2), f3.coerce(0)], 3)
    assert not in_span(basis, [f3.coerce(1), f3.coerce(0), f3.coerce(0)], 3)
    assert coordinates(basis, [f3.coerce(2), f3.coerce(2), f3.coerce(0)], 3, f3) == [f3.coerce(2)]
    assert coordinates([], [f3.zero] * 3, 3, f3) == []


def test_sparse_echelon():
    echelon = SparseEchelon()
    assert echelon.add({1: Fraction(1), 2: Fraction(2)})
    assert echelon.add({2: Fraction(1)})
    assert not echelon.add({1: Fraction(3), 2: Fraction(5)})
    assert echelon.contains({1: Fraction(7)})
    assert not echelon.contains({3: Fraction(1)})
    assert len(echelon) == 2
    assert echelon.pivots == [1, 2]
    assert echelon.extend([{3: Fraction(1)}, {3: Fraction(2), 1: Fraction(1)}]) == 1
