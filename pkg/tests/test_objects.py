"""Tests for algebra, coalgebra and bialgebra objects and their checkers."""

import pytest

from services.grading import AbelianGroup, Bicharacter
from services.gvect import BraidedContext, GradedVector, identity_map
from services.objects import (
    IdealError,
    algebra_from_table,
    alpha_symmetric_on,
    check_object,
    comultiply,
    counit,
    group_algebra,
    group_like_elements,
    ground_field,
    homogeneous_components,
    ideal_from_generators,
    is_algebra_morphism,
    is_coalgebra_morphism,
    make_ideal,
    multiply,
    primitive_elements,
    quotient_by_ideal,
    super_exterior,
    truncated_polynomial,
    unit_vector,
)
from utils.scalars import PrimeField, RationalField

Q = RationalField()


def super_context(domain=Q) -> BraidedContext:
    group = AbelianGroup(0, (2,))
    return BraidedContext(group, Bicharacter.super_sign(group, domain), domain)


def trivial_z2_context() -> BraidedContext:
    return BraidedContext.trivial(Q, AbelianGroup(0, (2,)))


def cubic(ctx=None):
    ctx = ctx or BraidedContext.trivial(Q)
    return truncated_polynomial(ctx, ctx.group.identity, 3)


def test_built_examples_satisfy_their_axioms():
    ctx = super_context()
    for obj in (ground_field(ctx), group_algebra(ctx, (2,)), super_exterior(ctx), cubic()):
        report = check_object(obj)
        assert report.passed, report.to_dict()


def test_exterior_algebra_needs_the_super_sign():
    report = check_object(super_exterior(trivial_z2_context()))
    assert not report.passed
    assert "delta multiplicative" in report.failed_laws()


def test_exterior_algebra_over_a_prime_field():
    assert check_object(super_exterior(super_context(PrimeField(p=5)))).passed


def test_self_graded_group_algebra_with_twist_is_not_a_bialgebra():
    h = group_algebra(super_context(), (2,), self_graded=True)
    assert "twists" in h.name
    assert not check_object(h).passed
    plain = group_algebra(trivial_z2_context(), (2,), self_graded=True)
    assert check_object(plain).passed


def test_non_associative_table():
    ctx = BraidedContext.trivial(Q)
    e = ctx.group.identity
    carrier = ctx.space({e: 3})
    one, a, b = (e, 0), (e, 1), (e, 2)
    table = {
        (one, one): {one: Q.one}, (one, a): {a: Q.one}, (a, one): {a: Q.one},
        (one, b): {b: Q.one}, (b, one): {b: Q.one}, (a, a): {b: Q.one}, (b, a): {a: Q.one},
    }
    obj = algebra_from_table(ctx, carrier, table, {one: Q.one}, "N")
    report = check_object(obj)
    assert report.failed_laws() == ["associativity"]


def test_sparse_structure_maps():
    h = super_exterior(super_context())
    one, x = h.carrier.basis()
    assert unit_vector(h.algebra) == {one: Q.one}
    assert multiply(h.algebra, {x: Q.one}, {x: Q.one}) == {}
    assert comultiply(h.coalgebra, {x: Q.one}) == {(x, one): Q.one, (one, x): Q.one}
    assert counit(h.coalgebra, {one: Q.coerce(3), x: Q.one}) == 3


def test_primitive_and_group_like_elements():
    h = super_exterior(super_context())
    _, x = h.carrier.basis()
    assert primitive_elements(h) == [{x: Q.one}]
    assert len(group_like_elements(group_algebra(trivial_z2_context(), (2, 2)))) == 4
    assert group_like_elements(h) == [h.carrier.basis()[0]]


def test_quotient_by_an_ideal():
    a = cubic()
    one, x, x2 = a.carrier.basis()
    ideal = make_ideal(a, [{x2: Q.one}])
    assert ideal.codim == 2
    quotient = quotient_by_ideal(a, ideal)
    assert quotient.algebra.dim == 2
    assert check_object(quotient.algebra).passed
    assert is_algebra_morphism(quotient.projection, a, quotient.algebra)


def test_span_that_is_not_an_ideal():
    a = cubic()
    _, x, _ = a.carrier.basis()
    with pytest.raises(IdealError):
        make_ideal(a, [{x: Q.one}])


def test_ideal_generated_by_x():
    a = cubic()
    _, x, _ = a.carrier.basis()
    assert len(ideal_from_generators(a, [{x: Q.one}])) == 2


def test_identity_is_a_morphism():
    h = super_exterior(super_context())
    f = identity_map(h.carrier, Q)
    assert is_algebra_morphism(f, h.algebra, h.algebra)
    assert is_coalgebra_morphism(f, h.coalgebra, h.coalgebra)


def test_homogeneous_components():
    h = super_exterior(super_context())
    one, x = h.carrier.basis()
    parts = homogeneous_components(GradedVector(h.carrier, {one: Q.one, x: Q.coerce(2)}))
    assert [p.degree for p in parts.values()] == [one[0], x[0]]


def test_symmetry_on_the_support():
    assert alpha_symmetric_on(super_exterior(super_context()))
    group = AbelianGroup(1)
    ctx = BraidedContext(group, Bicharacter(group, Q, ((Q.coerce(2),),)), Q)
    assert not alpha_symmetric_on(truncated_polynomial(ctx, group.element((1,)), 2))
