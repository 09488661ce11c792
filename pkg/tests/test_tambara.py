"""Tests for truncated quotients and the lifted left adjoint."""

import pytest

from services.grading import AbelianGroup, Bicharacter
from services.gvect import BraidedContext
from services.objects import check_object, super_exterior, truncated_polynomial
from services.tambara import (
    FreeGradedAlgebra,
    WindowError,
    free_algebra_dims,
    induced_law_check,
    pi_n_check,
    quotient_by_relations,
    rewriting_normal_forms,
    tambara_left_adjoint,
    tensor_algebra,
    truncation_coherence_check,
)
from utils.ncpoly import parse_polynomial
from utils.scalars import RationalField

Q = RationalField()
CTX = BraidedContext.trivial(Q)


@pytest.fixture(scope="module")
def dual_numbers():
    return truncated_polynomial(CTX, CTX.group.identity, 2)


@pytest.fixture(scope="module")
def adjoint(dual_numbers):
    return tambara_left_adjoint(dual_numbers, dual_numbers, 7)


def free(names, window):
    return FreeGradedAlgebra(tuple(names), tuple(CTX.group.identity for _ in names), window, CTX)


def test_free_algebra_dims():
    assert free_algebra_dims(2, 4) == [1, 2, 4, 8]
    v = CTX.space({"e": 2})
    algebra = tensor_algebra(v, 4, CTX)
    assert algebra.per_length_dims == [1, 2, 4, 8]
    assert algebra.multiply((0,), (1,)) == (0, 1)
    assert algebra.multiply((0, 0), (1, 1)) is None


def test_quotient_by_square():
    x = free(["X"], 5)
    quotient = quotient_by_relations(x, [parse_polynomial("X^2", x.names, Q)])
    assert quotient.per_length_dims == [1, 1, 0, 0, 0]
    assert quotient.is_finite
    assert quotient.reduce_word((0, 0)) == {}
    assert check_object(quotient.as_algebra("k[X]/(X^2)")).passed
    with pytest.raises(WindowError):
        quotient.reduce_word((0,) * 5)


def test_commutator_quotient_matches_rewriting():
    xy = free(["X", "Y"], 5)
    relation = parse_polynomial("X*Y - Y*X", xy.names, Q)
    quotient = quotient_by_relations(xy, [relation])
    assert quotient.per_length_dims == [1, 2, 3, 4, 5]
    assert rewriting_normal_forms(2, [relation], 5) == quotient.per_length_dims
    assert quotient.reduce_word((1, 0)) == {(0, 1): 1}


def test_linear_relations_are_substituted():
    x = free(["X"], 4)
    quotient = quotient_by_relations(x, [parse_polynomial("X - 2", x.names, Q)])
    assert quotient.per_length_dims == [1, 0, 0, 0]
    assert quotient.reduce_word((0, 0, 0)) == {(): 8}


def test_relation_longer_than_window():
    x = free(["X"], 3)
    with pytest.raises(WindowError):
        quotient_by_relations(x, [parse_polynomial("X^3", x.names, Q)])


def test_dual_numbers_adjoint_dims(adjoint):
    assert adjoint.per_length_dims == [1, 2, 2, 2, 2, 2, 2]
    summary = adjoint.to_dict()
    assert summary["relations"] == {"multiplicativity": 8, "unit": 2}
    assert len(summary["generators"]) == 4


def test_induced_laws(adjoint):
    report = induced_law_check(adjoint)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pi_n_factors_uniquely(adjoint, n):
    report = pi_n_check(adjoint, n)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pi_n_rejects_a_unit_image_for_x(adjoint, n):
    report = pi_n_check(adjoint, n, x_image=1)
    assert report.failed_laws() == ["algebra map"]


def test_pi_n_outside_window(adjoint):
    with pytest.raises(WindowError):
        pi_n_check(adjoint, 8)


def test_truncation_coherence(dual_numbers):
    assert truncation_coherence_check(dual_numbers, dual_numbers, 4, 7).passed


def test_adjoint_needs_room_and_trivial_grading(dual_numbers):
    with pytest.raises(WindowError):
        tambara_left_adjoint(dual_numbers, dual_numbers, 2)
    group = AbelianGroup(0, (2,))
    ctx = BraidedContext(group, Bicharacter.super_sign(group, Q), Q)
    exterior = super_exterior(ctx).algebra
    with pytest.raises(ValueError):
        tambara_left_adjoint(exterior, exterior, 5)
