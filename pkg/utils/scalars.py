"""Exact scalar domains: rationals, prime fields and cyclotomic fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Union

from sympy import QQ, Poly, Rational, cyclotomic_poly, isprime, symbols

_x = symbols("x")

MAX_PRIME = 2**63


class ScalarError(ValueError):
    """Raised for malformed scalar literals and invalid field data."""
    pass


class ModP:
    """Residue class modulo a prime."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other: Any) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ScalarError(f"Cannot mix F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.value, self.p)

    def inverse(self) -> "ModP":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            # ints compare as canonical residues
            return 0 <= other < self.p and self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class CyclotomicElement:
    """Residue of a rational polynomial modulo the n-th cyclotomic polynomial.

    Coefficients are stored on the power basis 1, z, ..., z^(d-1) of the
    field generator z, lowest power first.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple[Fraction, ...], field: "CyclotomicField"):
        self.coeffs = coeffs
        self.field = field

    def _coerce(self, other: Any) -> "CyclotomicElement":
        if isinstance(other, CyclotomicElement):
            if other.field.n != self.field.n:
                raise ScalarError(
                    f"Cannot mix Q(z_{self.field.n}) and Q(z_{other.field.n})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.field
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.field.degree
        product = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[i + j] += a * b
        return CyclotomicElement(self.field.reduce(product), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return CyclotomicElement(tuple(-a for a in self.coeffs), self.field)

    def inverse(self) -> "CyclotomicElement":
        if not self:
            raise ZeroDivisionError("0 has no inverse in a cyclotomic field")
        return CyclotomicElement(self.field.invert(self.coeffs), self.field)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.field.n == other.field.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.field.coerce(other).coeffs
        return NotImplemented

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


Scalar = Union[Fraction, ModP, CyclotomicElement]


@dataclass(frozen=True)
class ScalarDomain:
    """An exact field. Subclasses fix the element type."""

    kind: str = field(init=False, default="Q")

    @property
    def zero(self) -> Scalar:
        return self.coerce(0)

    @property
    def one(self) -> Scalar:
        return self.coerce(1)

    def coerce(self, value: Union[int, Fraction]) -> Scalar:
        raise NotImplementedError

    def parse(self, literal: Any) -> Scalar:
        raise NotImplementedError

    def format(self, value: Scalar) -> Any:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def random_element(self, rng, bound: int = 5) -> Scalar:
        """Small nonzero-biased element drawn from a deterministic generator."""
        return self.coerce(rng.randint(-bound, bound))

    @property
    def characteristic(self) -> int:
        return 0


@dataclass(frozen=True)
class RationalField(ScalarDomain):
    kind: str = field(init=False, default="Q")

    def coerce(self, value):
        return Fraction(value)

    def parse(self, literal):
        if isinstance(literal, bool):
            raise ScalarError(f"Not a rational literal: {literal!r}")
        if isinstance(literal, int):
            return Fraction(literal)
        if not isinstance(literal, str):
            raise ScalarError(f"Not a rational literal: {literal!r}")
        try:
            return Fraction(literal.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ScalarError(f"Not a rational literal: {literal!r}") from e

    def format(self, value):
        return str(value)

    def describe(self):
        return {"kind": "Q"}


@dataclass(frozen=True)
class PrimeField(ScalarDomain):
    p: int = 2
    kind: str = field(init=False, default="Fp")

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise ScalarError(f"p = {self.p} is not a prime")
        if self.p >= MAX_PRIME:
            raise ScalarError(f"p = {self.p} exceeds 2**63")

    def coerce(self, value):
        if isinstance(value, Fraction):
            return ModP(value.numerator, self.p) / ModP(value.denominator, self.p)
        return ModP(value, self.p)

    def parse(self, literal):
        if isinstance(literal, bool):
            raise ScalarError(f"Not an F_{self.p} literal: {literal!r}")
        if isinstance(literal, int):
            return ModP(literal, self.p)
        if not isinstance(literal, str):
            raise ScalarError(f"Not an F_{self.p} literal: {literal!r}")
        try:
            value = Fraction(literal.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ScalarError(f"Not an F_{self.p} literal: {literal!r}") from e
        if value.denominator % self.p == 0:
            raise ScalarError(f"Denominator of {literal!r} vanishes in F_{self.p}")
        return self.coerce(value)

    def format(self, value):
        return str(value.value)

    def describe(self):
        return {"kind": "Fp", "p": self.p}

    def random_element(self, rng, bound: int = 5):
        return ModP(rng.randint(0, self.p - 1), self.p)

    @property
    def characteristic(self):
        return self.p

    def elements(self) -> list[ModP]:
        return [ModP(v, self.p) for v in range(self.p)]


@dataclass(frozen=True)
class CyclotomicField(ScalarDomain):
    n: int = 1
    kind: str = field(init=False, default="QCyclo")

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ScalarError(f"Cyclotomic order must be a positive integer, got {self.n}")

    @cached_property
    def modulus(self) -> tuple[int, ...]:
        """Coefficients of the n-th cyclotomic polynomial, lowest power first."""
        coeffs = Poly(cyclotomic_poly(self.n, _x), _x).all_coeffs()
        return tuple(int(c) for c in reversed(coeffs))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def reduce(self, poly: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        poly = list(poly)
        for k in range(len(poly) - 1, d - 1, -1):
            c = poly[k]
            if c:
                for i, m in enumerate(self.modulus):
                    poly[k - d + i] -= c * m
        poly += [Fraction(0)] * (d - len(poly))
        return tuple(poly[:d])

    @cached_property
    def modulus_poly(self) -> Poly:
        return Poly(cyclotomic_poly(self.n, _x), _x, domain=QQ)

    def invert(self, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        """Inverse modulo the cyclotomic polynomial."""
        f = Poly([Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _x, domain=QQ)
        inverse = f.invert(self.modulus_poly)
        return self.reduce([Fraction(int(c.p), int(c.q)) for c in reversed(inverse.all_coeffs())])

    def coerce(self, value):
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return CyclotomicElement(tuple(coeffs), self)

    @property
    def root_of_unity(self) -> CyclotomicElement:
        return CyclotomicElement(self.reduce([Fraction(0), Fraction(1)]), self)

    def parse(self, literal):
        if isinstance(literal, (int, str)) and not isinstance(literal, bool):
            return self.coerce(RationalField().parse(literal))
        if not isinstance(literal, list):
            raise ScalarError(f"Not a Q(z_{self.n}) literal: {literal!r}")
        rational = RationalField()
        coeffs = [rational.parse(c) for c in literal]
        return CyclotomicElement(self.reduce(coeffs), self)

    def format(self, value):
        return [str(c) for c in value.coeffs]

    def describe(self):
        return {"kind": "QCyclo", "n": self.n}

    def random_element(self, rng, bound: int = 3):
        coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(self.degree)]
        return CyclotomicElement(tuple(coeffs), self)


def domain_from_config(config: dict) -> ScalarDomain:
    """Build a domain from the JSON fragment {"kind": "Q"|"Fp"|"QCyclo", ...}."""
    kind = config.get("kind")
    if kind == "Q":
        return RationalField()
    if kind == "Fp":
        return PrimeField(p=int(config.get("p", 0)))
    if kind == "QCyclo":
        return CyclotomicField(n=int(config.get("n", 0)))
    raise ScalarError(f"Unknown field kind: {kind!r}")
