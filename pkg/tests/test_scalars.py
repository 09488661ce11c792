"""Tests for the exact scalar domains."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from utils.scalars import (
    CyclotomicField,
    ModP,
    PrimeField,
    RationalField,
    ScalarError,
    domain_from_config,
)


def test_rational_parse_and_format():
    q = RationalField()
    assert q.parse("-3/6") == Fraction(-1, 2)
    assert q.parse(4) == Fraction(4)
    assert q.format(Fraction(2, 3)) == "2/3"
    with pytest.raises(ScalarError):
        q.parse("x")
    with pytest.raises(ScalarError):
        q.parse(True)


def test_prime_field_rejects_composites():
    with pytest.raises(ScalarError):
        PrimeField(p=9)
    with pytest.raises(ScalarError):
        PrimeField(p=1)


def test_prime_field_fractions():
    f7 = PrimeField(p=7)
    half = f7.parse("1/2")
    assert half * 2 == 1
    assert f7.format(half) == "4"
    with pytest.raises(ScalarError):
        f7.parse("1/7")
    assert f7.characteristic == 7
    assert len(f7.elements()) == 7


@given(st.integers(min_value=1, max_value=100), st.integers(min_value=-1000, max_value=1000))
def test_prime_field_inverse(value, other):
    f101 = PrimeField(p=101)
    a = f101.coerce(value)
    assert a * a.inverse() == 1
    b = f101.coerce(other)
    assert (b / a) * a == b


def test_prime_field_compares_with_canonical_ints():
    f3 = PrimeField(p=3)
    two = f3.coerce(2)
    assert two == 2
    assert two != 5
    assert two != -1
    assert hash(two) == hash(2)
    assert len({two, f3.coerce(5), f3.coerce(-1)}) == 1


def test_mixing_primes_is_an_error():
    with pytest.raises(ScalarError):
        ModP(1, 5) + ModP(1, 7)


def test_cube_roots_of_unity():
    k = CyclotomicField(n=3)
    z = k.root_of_unity
    assert k.degree == 2
    assert z ** 3 == 1
    assert z != 1
    assert z + z ** 2 == -1
    assert z * z.inverse() == 1
    assert z ** -1 == z ** 2


def test_gaussian_rationals():
    k = CyclotomicField(n=4)
    i = k.root_of_unity
    assert i * i == -1
    assert k.parse([1, 1]) * k.parse([1, -1]) == 2
    assert k.format(i) == ["0", "1"]


@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4).filter(any))
def test_cyclotomic_inverse(coeffs):
    k = CyclotomicField(n=5)
    a = k.parse(coeffs)
    assert a * a.inverse() == 1


def test_cyclotomic_inverse_of_one_plus_root():
    k = CyclotomicField(n=7)
    z = k.root_of_unity
    a = z + 1
    b = a.inverse()
    assert a * b == 1
    assert k.modulus_poly.degree() == 6
    assert b + z + z ** 3 + z ** 5 == 0


def test_domain_from_config():
    assert isinstance(domain_from_config({"kind": "Q"}), RationalField)
    assert domain_from_config({"kind": "Fp", "p": 5}).p == 5
    assert domain_from_config({"kind": "QCyclo", "n": 6}).describe() == {"kind": "QCyclo", "n": 6}
    with pytest.raises(ScalarError):
        domain_from_config({"kind": "R"})
