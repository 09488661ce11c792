"""Tests for duals of finite-dimensional objects."""

import json

import pytest

from config.settings import settings
from mocks.problems import PROBLEMS
from services.dualization import (
    DimensionLimitError,
    InfiniteDimensionalError,
    contravariant_functoriality_check,
    double_dual_comparison,
    double_dual_expected,
    dual_algebra,
    dual_coalgebra,
    dualize,
    lifted_unit_check,
    lifted_unit_expected,
    solve_intertwiner,
)
from services.grading import AbelianGroup, Bicharacter
from services.gvect import BraidedContext, dual_space, identity_map, zero_map
from services.objects import (
    AlgebraObject,
    BialgebraObject,
    CoalgebraObject,
    check_object,
    group_algebra,
    ground_field,
    is_algebra_morphism,
    is_coalgebra_morphism,
    super_exterior,
    truncated_polynomial,
)
from services.schema import parse_problem
from services.serialization import build_context, build_object
from utils.scalars import RationalField

Q = RationalField()


def super_context() -> BraidedContext:
    group = AbelianGroup(0, (2,))
    return BraidedContext(group, Bicharacter.super_sign(group, Q), Q)


@pytest.mark.parametrize("colax", ["phi", "psi"])
def test_dual_of_the_exterior_bialgebra(colax):
    h = super_exterior(super_context())
    dual, witness = dualize(h, colax)
    assert isinstance(dual, BialgebraObject)
    assert dual.carrier == dual_space(h.carrier)
    assert check_object(dual).passed
    assert witness.verify(h.carrier)
    assert set(witness.to_dict()["maps"]) >= {"phi2", "phi0", "eta", "j"}


def test_dual_kinds_swap():
    ctx = BraidedContext.trivial(Q)
    a = truncated_polynomial(ctx, ctx.group.identity, 3)
    coalgebra, _ = dualize(a)
    assert isinstance(coalgebra, CoalgebraObject)
    assert check_object(coalgebra).passed
    algebra, _ = dualize(coalgebra)
    assert isinstance(algebra, AlgebraObject)
    assert check_object(algebra).passed
    assert algebra.name == "((k[X]/(X^3))^dual)^dual"


@pytest.mark.parametrize("build", [ground_field, lambda ctx: group_algebra(ctx, (2,)), super_exterior])
def test_double_dual_comparison(build):
    h = build(super_context())
    report = double_dual_comparison(h)
    assert report.passed, report.to_dict()


def test_lifted_unit_is_an_algebra_map():
    ctx = super_context()
    assert lifted_unit_check(super_exterior(ctx).algebra).passed
    assert lifted_unit_check(truncated_polynomial(ctx, ctx.group.identity, 4), "psi").passed


def non_symmetric_algebra() -> AlgebraObject:
    problem = parse_problem(json.dumps(PROBLEMS["non_symmetric_table"]).encode())
    return build_object(problem.objects[0], build_context(problem))


def test_lifted_unit_without_symmetry_needs_psi():
    b = non_symmetric_algebra()
    assert check_object(b).passed
    assert not lifted_unit_expected(b, "phi")
    assert lifted_unit_expected(b, "psi")
    assert lifted_unit_check(b, "psi").passed
    assert lifted_unit_check(b, "phi").failed_laws() == ["multiplicative"]


def test_double_dual_expectations():
    h = super_exterior(super_context())
    assert double_dual_expected(h, "phi")
    assert double_dual_expected(h, "psi")
    assert double_dual_comparison(h, "psi").passed


def test_exterior_bialgebra_is_self_dual():
    h = super_exterior(super_context())
    dual, _ = dualize(h)
    iso = solve_intertwiner(h, dual)
    assert iso is not None
    assert is_algebra_morphism(iso, h.algebra, dual.algebra)
    assert is_coalgebra_morphism(iso, h.coalgebra, dual.coalgebra)


def test_dual_of_a_coalgebra_morphism():
    ctx = super_context()
    c = super_exterior(ctx).coalgebra
    report = contravariant_functoriality_check(identity_map(c.carrier, Q), c, c)
    assert report.passed
    report = contravariant_functoriality_check(zero_map(c.carrier, c.carrier, Q), c, c)
    assert report.failed_laws() == ["coalgebra morphism"]


def test_dual_algebra_and_coalgebra_directly():
    h = super_exterior(super_context())
    assert check_object(dual_algebra(h.coalgebra)).passed
    assert check_object(dual_coalgebra(h.algebra, "psi")).passed
    with pytest.raises(ValueError):
        dual_coalgebra(h.algebra, "chi")


def test_dimension_limit(monkeypatch):
    monkeypatch.setattr(settings, "max_dim", 1)
    with pytest.raises(DimensionLimitError):
        dualize(group_algebra(super_context(), (2,)))


def test_only_finite_objects_are_dualized():
    with pytest.raises(InfiniteDimensionalError):
        dualize("k[X]")
