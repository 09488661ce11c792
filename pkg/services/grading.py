"""Grading groups, group elements and bicharacters.

Groups are finitely generated abelian groups in canonical form
Z^r + Z/n_1 + ... + Z/n_k with n_1 | n_2 | ... | n_k. A bicharacter is stored
by its values on pairs of canonical generators and extended by
bimultiplicativity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from itertools import product
from typing import Iterable, Optional

from config.logger import get_logger
from utils.scalars import Scalar, ScalarDomain

logger = get_logger(__name__)


class SignatureError(ValueError):
    """Raised when elements of different groups are combined."""
    pass


class GradingError(ValueError):
    """Raised for invalid group data or malformed degrees."""
    pass


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise GradingError(f"free rank must be nonnegative, got {self.free_rank}")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for n in self.torsion:
            if n < 2:
                raise GradingError(f"torsion orders must be >= 2, got {n}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise GradingError(
                    f"torsion orders must form a divisibility chain, {a} does not divide {b}"
                )

    @property
    def rank(self) -> int:
        """Number of canonical generators."""
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple[Optional[int], ...]:
        """Order of each canonical generator (None for free generators)."""
        return (None,) * self.free_rank + self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords: Iterable[int]) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise GradingError(f"expected {self.rank} coordinates, got {len(coords)}")
        reduced = tuple(
            c if n is None else c % n for c, n in zip(coords, self.orders)
        )
        return GroupElement(self, reduced)

    def generators(self) -> list[GroupElement]:
        return [
            self.element(1 if i == j else 0 for j in range(self.rank))
            for i in range(self.rank)
        ]

    def elements(self) -> list[GroupElement]:
        """All elements of a finite group in canonical order."""
        if not self.is_finite:
            raise GradingError("cannot enumerate an infinite group")
        return [GroupElement(self, c) for c in product(*(range(n) for n in self.torsion))]

    def parse_degree(self, text: str) -> GroupElement:
        text = text.strip()
        if text in ("", "e"):
            if self.rank and text == "":
                raise GradingError(f"empty degree for a group of rank {self.rank}")
            return self.identity
        try:
            coords = [int(part) for part in text.split(",")]
        except ValueError as e:
            raise GradingError(f"malformed degree {text!r}") from e
        return self.element(coords)

    def format_degree(self, g: GroupElement) -> str:
        return ",".join(str(c) for c in g.coords)

    def random_element(self, rng, bound: int = 3) -> GroupElement:
        return self.element(
            rng.randint(-bound, bound) if n is None else rng.randint(0, n - 1)
            for n in self.orders
        )

    def describe(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@total_ordering
@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup = field(repr=False)
    coords: tuple[int, ...] = ()

    def __lt__(self, other: "GroupElement") -> bool:
        return self.coords < other.coords

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_op(self, other)

    def inverse(self) -> "GroupElement":
        return group_inv(self)

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return self.group.format_degree(self) or "e"


def group_op(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group != b.group:
        raise SignatureError(f"cannot compose elements of {a.group} and {b.group}")
    return a.group.element(x + y for x, y in zip(a.coords, b.coords))


def group_inv(a: GroupElement) -> GroupElement:
    return a.group.element(-x for x in a.coords)


@dataclass(frozen=True)
class Bicharacter:
    group: AbelianGroup
    domain: ScalarDomain
    q: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(tuple(row) for row in self.q))
        if len(self.q) != self.group.rank or any(len(r) != self.group.rank for r in self.q):
            raise GradingError(
                f"bicharacter matrix must be {self.group.rank}x{self.group.rank}"
            )

    @classmethod
    def trivial(cls, group: AbelianGroup, domain: ScalarDomain) -> "Bicharacter":
        one = domain.one
        return cls(group, domain, tuple((one,) * group.rank for _ in range(group.rank)))

    @classmethod
    def super_sign(cls, group: AbelianGroup, domain: ScalarDomain) -> "Bicharacter":
        """Trivial except for alpha(g, g) = -1 on the last torsion generator of order 2."""
        if not group.torsion or group.torsion[-1] % 2:
            raise GradingError("the super sign needs a torsion generator of even order")
        alpha = [[domain.one] * group.rank for _ in range(group.rank)]
        alpha[-1][-1] = -domain.one
        return cls(group, domain, tuple(tuple(r) for r in alpha))

    def __call__(self, g: GroupElement, h: GroupElement) -> Scalar:
        return bicharacter_eval(self, g, h)


@lru_cache(maxsize=1 << 16)
def _evaluate(alpha: Bicharacter, g: tuple[int, ...], h: tuple[int, ...]) -> Scalar:
    value = alpha.domain.one
    for i, gi in enumerate(g):
        if not gi:
            continue
        for j, hj in enumerate(h):
            if hj:
                value = value * alpha.q[i][j] ** (gi * hj)
    return value


def bicharacter_eval(alpha: Bicharacter, g: GroupElement, h: GroupElement) -> Scalar:
    if g.group != alpha.group or h.group != alpha.group:
        raise SignatureError("degrees do not belong to the bicharacter's group")
    return _evaluate(alpha, g.coords, h.coords)


@dataclass
class BicharacterReport:
    nonzero: bool = True
    torsion_consistent: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.nonzero and self.torsion_consistent


def bicharacter_validate(alpha: Bicharacter) -> BicharacterReport:
    report = BicharacterReport()
    orders = alpha.group.orders
    for i, row in enumerate(alpha.q):
        for j, value in enumerate(row):
            if not value:
                report.nonzero = False
                report.failures.append(f"q[{i}][{j}] is zero")
                continue
            for n in sorted({orders[i], orders[j]} - {None}):
                if value ** n != 1:
                    report.torsion_consistent = False
                    report.failures.append(f"q[{i}][{j}]^{n} != 1")
    if not report.valid:
        logger.warning(f"Invalid bicharacter: {'; '.join(report.failures)}")
    return report


def symmetry_check(alpha: Bicharacter) -> bool:
    """True iff the braiding defined by alpha is a symmetry."""
    rank = alpha.group.rank
    return all(
        alpha.q[i][j] * alpha.q[j][i] == 1 for i in range(rank) for j in range(rank)
    )


def is_symmetric_on(alpha: Bicharacter, degrees: Iterable[GroupElement]) -> bool:
    degrees = list(degrees)
    return all(alpha(g, h) * alpha(h, g) == 1 for g in degrees for h in degrees)


def monodromy_order_divides(alpha: Bicharacter, degrees: Iterable[GroupElement], n: int) -> bool:
    """True iff (alpha(g, h) alpha(h, g))^n = 1 for all g, h in degrees."""
    degrees = list(degrees)
    one = alpha.domain.one
    return all((alpha(g, h) * alpha(h, g)) ** n == one for g in degrees for h in degrees)
