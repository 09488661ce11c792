"""Noncommutative polynomials over the free algebra k<X_1, ..., X_n>.

Words are tuples of generator indices and are ordered degree-lexicographically
(length first, then generator index). Polynomials are sparse maps from words
to nonzero scalars.

The text syntax accepts sums of products of scalars and generator powers,
with parentheses: ``"X*Y + Y*X"``, ``"X^2"``, ``"2*X - 1/3"``, ``"(X - 1)^2"``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from utils.scalars import Scalar, ScalarDomain

Word = tuple[int, ...]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text."""
    pass


def deglex_key(word: Word) -> tuple[int, Word]:
    return len(word), word


class NCPolynomial:
    __slots__ = ("terms", "domain")

    def __init__(self, terms: Optional[dict[Word, Scalar]] = None, domain: Optional[ScalarDomain] = None):
        if domain is None:
            raise ValueError("a scalar domain is required")
        self.domain = domain
        self.terms = {tuple(w): c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, word: Sequence[int], domain: ScalarDomain, coefficient=None) -> "NCPolynomial":
        return cls({tuple(word): domain.one if coefficient is None else coefficient}, domain)

    @classmethod
    def constant(cls, value, domain: ScalarDomain) -> "NCPolynomial":
        return cls({(): domain.coerce(value)}, domain)

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, self.domain.zero) + c
        return NCPolynomial(terms, self.domain)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial({w: -c for w, c in self.terms.items()}, self.domain)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __mul__(self, other: "NCPolynomial") -> "NCPolynomial":
        terms: dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, self.domain.zero) + c1 * c2
        return NCPolynomial(terms, self.domain)

    def scale(self, c: Scalar) -> "NCPolynomial":
        return NCPolynomial({w: c * v for w, v in self.terms.items()}, self.domain)

    def __pow__(self, k: int) -> "NCPolynomial":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = NCPolynomial.constant(1, self.domain)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    @property
    def min_length(self) -> int:
        return min((len(w) for w in self.terms), default=0)

    def leading_word(self) -> Word:
        return max(self.terms, key=deglex_key)

    def is_homogeneous(self, degree_of_word) -> bool:
        return len({degree_of_word(w) for w in self.terms}) <= 1

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        out = ""
        for w in sorted(self.terms, key=deglex_key, reverse=True):
            c = self.terms[w]
            word = "*".join(names[i] for i in w)
            coefficient = self.domain.format(c)
            if isinstance(coefficient, list):
                coefficient = "[" + ",".join(coefficient) + "]"
            negative = coefficient.startswith("-")
            if negative:
                c, coefficient = -c, coefficient[1:]
            if not word:
                term = coefficient
            elif c == self.domain.one:
                term = word
            else:
                term = f"{coefficient}*{word}"
            if not out:
                out = f"-{term}" if negative else term
            else:
                out += f" - {term}" if negative else f" + {term}"
        return out

    def __repr__(self):
        return f"NCPolynomial({self.terms!r})"


class _Parser:
    def __init__(self, text: str, names: Sequence[str], domain: ScalarDomain):
        self.names = {name: k for k, name in enumerate(names)}
        self.domain = domain
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, str]]:
        tokens = []
        for number, name, symbol in _TOKEN.findall(text):
            if number:
                tokens.append(("num", number))
            elif name:
                tokens.append(("name", name))
            elif symbol.strip():
                tokens.append(("sym", symbol))
        return tokens

    def peek(self) -> Optional[tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, value: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or token[0] != kind or (value is not None and token[1] != value):
            raise PolynomialSyntaxError(f"expected {value or kind} at token {self.pos}, got {token}")
        self.pos += 1
        return token[1]

    def parse(self) -> NCPolynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial")
        result = self.expr()
        if self.peek() is not None:
            raise PolynomialSyntaxError(f"unexpected trailing token {self.peek()}")
        return result

    def expr(self) -> NCPolynomial:
        sign = self._sign()
        result = self.term().scale(self.domain.coerce(sign))
        while self.peek() in (("sym", "+"), ("sym", "-")):
            sign = 1 if self.take("sym") == "+" else -1
            result = result + self.term().scale(self.domain.coerce(sign))
        return result

    def _sign(self) -> int:
        if self.peek() == ("sym", "-"):
            self.pos += 1
            return -1
        if self.peek() == ("sym", "+"):
            self.pos += 1
        return 1

    def term(self) -> NCPolynomial:
        result = self.power()
        while self.peek() == ("sym", "*"):
            self.pos += 1
            result = result * self.power()
        return result

    def power(self) -> NCPolynomial:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.pos += 1
            base = base ** int(self.take("num"))
        return base

    def atom(self) -> NCPolynomial:
        token = self.peek()
        if token is None:
            raise PolynomialSyntaxError("unexpected end of polynomial")
        kind, value = token
        if kind == "num":
            self.pos += 1
            number = Fraction(int(value))
            if self.peek() == ("sym", "/"):
                self.pos += 1
                denominator = int(self.take("num"))
                if denominator == 0:
                    raise PolynomialSyntaxError("zero denominator")
                number /= denominator
            return NCPolynomial({(): self.domain.coerce(number)}, self.domain)
        if kind == "name":
            if value not in self.names:
                raise PolynomialSyntaxError(f"unknown generator {value!r}")
            self.pos += 1
            return NCPolynomial.word((self.names[value],), self.domain)
        if token == ("sym", "("):
            self.pos += 1
            inner = self.expr()
            self.take("sym", ")")
            return inner
        raise PolynomialSyntaxError(f"unexpected token {value!r}")


def parse_polynomial(text: str, names: Sequence[str], domain: ScalarDomain) -> NCPolynomial:
    return _Parser(text, names, domain).parse()


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Single monomial such as ``"X^3"``, ``"X*Y*X"`` or ``"1"`` (the empty word)."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    word: list[int] = []
    index = {name: k for k, name in enumerate(names)}
    for factor in text.split("*"):
        name, _, exponent = factor.strip().partition("^")
        if name not in index:
            raise PolynomialSyntaxError(f"unknown generator {name!r} in word {text!r}")
        try:
            count = int(exponent) if exponent else 1
        except ValueError as e:
            raise PolynomialSyntaxError(f"bad exponent in word {text!r}") from e
        word.extend([index[name]] * count)
    return tuple(word)


def format_word(word: Word, names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts: list[str] = []
    k = 0
    while k < len(word):
        run = 1
        while k + run < len(word) and word[k + run] == word[k]:
            run += 1
        parts.append(names[word[k]] if run == 1 else f"{names[word[k]]}^{run}")
        k += run
    return "*".join(parts)


def words_of_length(n_generators: int, length: int) -> Iterable[Word]:
    """All words of a given length in deglex order."""
    return (tuple(w) for w in product(range(n_generators), repeat=length))
