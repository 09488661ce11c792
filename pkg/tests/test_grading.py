"""Tests for grading groups and bicharacters."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from services.grading import (
    AbelianGroup,
    Bicharacter,
    GradingError,
    SignatureError,
    bicharacter_validate,
    group_op,
    is_symmetric_on,
    monodromy_order_divides,
    symmetry_check,
)
from utils.scalars import CyclotomicField, RationalField

Q = RationalField()


def test_torsion_must_form_a_divisibility_chain():
    AbelianGroup(1, (2, 4))
    with pytest.raises(GradingError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(GradingError):
        AbelianGroup(0, (1,))
    with pytest.raises(GradingError):
        AbelianGroup(-1)


def test_elements_reduce_modulo_torsion():
    group = AbelianGroup(1, (3,))
    g = group.element((5, 4))
    assert g.coords == (5, 1)
    assert (g * g.inverse()).is_identity
    assert group.parse_degree("2,5") == group.element((2, 2))
    assert group.format_degree(g) == "5,1"
    with pytest.raises(GradingError):
        group.parse_degree("1")
    with pytest.raises(GradingError):
        group.parse_degree("")


def test_trivial_group_degrees():
    group = AbelianGroup()
    assert group.parse_degree("") == group.identity
    assert group.parse_degree("e") == group.identity
    assert str(group.identity) == "e"


def test_finite_group_enumeration():
    group = AbelianGroup(0, (2, 4))
    assert len(group.elements()) == 8
    with pytest.raises(GradingError):
        AbelianGroup(1).elements()


def test_elements_of_different_groups_do_not_mix():
    with pytest.raises(SignatureError):
        group_op(AbelianGroup(1).identity, AbelianGroup(2).identity)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_bicharacter_is_bimultiplicative(a, b, c, d):
    group = AbelianGroup(2)
    alpha = Bicharacter(group, Q, ((Q.coerce(2), Q.coerce(3)), (Q.coerce(1), Q.parse("1/5"))))
    g, h, k = group.element((a, b)), group.element((c, d)), group.element((b, c))
    assert alpha(group_op(g, h), k) == alpha(g, k) * alpha(h, k)
    assert alpha(g, group_op(h, k)) == alpha(g, h) * alpha(g, k)


def test_super_sign():
    group = AbelianGroup(0, (2,))
    alpha = Bicharacter.super_sign(group, Q)
    odd = group.element((1,))
    assert alpha(odd, odd) == -1
    assert alpha(group.identity, odd) == 1
    assert bicharacter_validate(alpha).valid
    assert symmetry_check(alpha)
    with pytest.raises(GradingError):
        Bicharacter.super_sign(AbelianGroup(0, (3,)), Q)


def test_torsion_inconsistent_bicharacter_is_reported():
    group = AbelianGroup(0, (2,))
    alpha = Bicharacter(group, Q, ((Q.coerce(2),),))
    report = bicharacter_validate(alpha)
    assert not report.valid
    assert not report.torsion_consistent
    assert report.failures == ["q[0][0]^2 != 1"]


def test_zero_entry_is_reported():
    group = AbelianGroup(1)
    report = bicharacter_validate(Bicharacter(group, Q, ((Q.zero,),)))
    assert not report.nonzero


def test_matrix_shape():
    with pytest.raises(GradingError):
        Bicharacter(AbelianGroup(2), Q, ((Q.one,),))


def test_cyclotomic_bicharacter_is_braided_not_symmetric():
    k = CyclotomicField(n=3)
    group = AbelianGroup(0, (3,))
    alpha = Bicharacter(group, k, ((k.root_of_unity,),))
    assert bicharacter_validate(alpha).valid
    assert not symmetry_check(alpha)
    g = group.element((1,))
    assert not is_symmetric_on(alpha, [g])
    assert is_symmetric_on(alpha, [group.identity])


def test_monodromy_order():
    group = AbelianGroup(2)
    x, y = group.generators()
    alpha = Bicharacter(group, Q, ((Q.one, Q.coerce(-1)), (Q.one, Q.one)))
    assert not is_symmetric_on(alpha, [x, y])
    assert not monodromy_order_divides(alpha, [x, y], 1)
    assert monodromy_order_divides(alpha, [x, y], 2)
    assert monodromy_order_divides(alpha, [x], 1)
    doubling = Bicharacter(group, Q, ((Q.one, Q.coerce(2)), (Q.one, Q.coerce(3))))
    assert not monodromy_order_divides(doubling, [x, y], 2)
