"""The graded finite dual of a presented algebra.

A homogeneous functional f of degree h lives on the component of words of
degree h^-1. At truncation n its kernel ideal is computed from the matrix

    rows     normal words a with len(a) < n
    columns  contexts (b, c) with len(b) + len(c) <= n - 1
    entries  f(b * a * c)

whose left null space is the window's I_f and whose rank is its codimension.
For one generator this is the n x n Hankel matrix of the sequence f(X^k).
Membership is declared once the codimension trace is constant over the last
W windows and the final I_f is closed under multiplication by generators;
otherwise the result is "not a member up to N".

The finite dual itself is assembled as a sum of good subspaces
(B/I)^dual -> B^dual over a finite family of ideals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Mapping, Optional, Sequence

from config.logger import get_logger
from config.settings import settings
from services.dualization import dual_coalgebra
from services.grading import GradingError, GroupElement, group_inv, group_op, is_symmetric_on
from services.gvect import (
    Basis,
    BraidedContext,
    GradedLinearMap,
    GradedVectorSpace,
    map_from_columns,
    tensor_basis,
    tensor_layout,
    tensor_space,
    unit_space,
)
from services.objects import AxiomFailure, AxiomReport, CoalgebraObject, IdealError
from services.tambara import TruncatedQuotient, WindowError
from utils import linalg
from utils.ncpoly import NCPolynomial, Word, deglex_key, format_word, parse_polynomial, parse_word
from utils.scalars import PrimeField, Scalar

logger = get_logger(__name__)

_MAX_WINDOW = 64

Element = dict[Word, Scalar]


class TruncationError(ValueError):
    """Raised when a truncation window is too small for the requested computation."""
    pass


class InconsistentCoproductError(RuntimeError):
    """Raised when good subspaces disagree on the coproduct of a shared functional."""
    pass


# Presentations


class TruncatedPresentation(TruncatedQuotient):
    """Words of length < window of a presented algebra, in normal form."""

    def __init__(self, presentation: "AlgebraPresentation", window: int):
        super().__init__(
            presentation.names, presentation.degrees, presentation.relations, window, presentation.ctx
        )
        self.presentation = presentation

    def words_of_degree(self, g: GroupElement, max_length: Optional[int] = None) -> list[Word]:
        return [w for w in self.normal_words(max_length) if self.degree_of_word(w) == g]

    def by_degree(self, max_length: Optional[int] = None) -> dict[GroupElement, list[Word]]:
        out: dict[GroupElement, list[Word]] = {}
        for w in self.normal_words(max_length):
            out.setdefault(self.degree_of_word(w), []).append(w)
        return out


@dataclass(eq=False)
class AlgebraPresentation:
    ctx: BraidedContext
    names: tuple[str, ...]
    degrees: tuple[GroupElement, ...]
    relations: list[NCPolynomial] = field(default_factory=list)
    name: str = "B"
    _truncations: dict[int, TruncatedPresentation] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.names = tuple(self.names)
        self.degrees = tuple(self.degrees)
        if len(self.names) != len(self.degrees):
            raise GradingError("every generator needs a degree")
        if len(set(self.names)) != len(self.names):
            raise GradingError(f"duplicate generator names in {self.names}")
        for r in self.relations:
            if not r.is_homogeneous(self.degree_of_word):
                raise GradingError(f"relation {r.format(self.names)} is not homogeneous")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], ctx: BraidedContext, name: str = "B") -> "AlgebraPresentation":
        names = [g["name"] for g in data.get("generators", [])]
        degrees = [ctx.group.parse_degree(str(g.get("degree", ""))) for g in data.get("generators", [])]
        relations = [parse_polynomial(text, names, ctx.domain) for text in data.get("relations", [])]
        return cls(ctx, tuple(names), tuple(degrees), relations, data.get("name", name))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "generators": [
                {"name": n, "degree": self.ctx.group.format_degree(g)} for n, g in zip(self.names, self.degrees)
            ],
            "relations": [r.format(self.names) for r in self.relations],
        }

    def degree_of_word(self, word: Word) -> GroupElement:
        degree = self.ctx.group.identity
        for letter in word:
            degree = group_op(degree, self.degrees[letter])
        return degree

    def truncate(self, window: int) -> TruncatedPresentation:
        if window not in self._truncations:
            if window < 1:
                raise TruncationError(f"window must be >= 1, got {window}")
            try:
                self._truncations[window] = TruncatedPresentation(self, window)
            except WindowError as e:
                raise TruncationError(str(e)) from e
        return self._truncations[window]

    def with_relations(self, extra: Sequence[NCPolynomial], name: Optional[str] = None) -> "AlgebraPresentation":
        for r in extra:
            if r and not r.is_homogeneous(self.degree_of_word):
                raise IdealError(f"ideal generator {r.format(self.names)} is not homogeneous")
        return AlgebraPresentation(
            self.ctx, self.names, self.degrees, list(self.relations) + [r for r in extra if r], name or self.name
        )

    def format_ideal(self, generators: Sequence[NCPolynomial]) -> str:
        return "(" + ", ".join(g.format(self.names) for g in generators) + ")"


def finite_truncation(presentation: AlgebraPresentation, start: int) -> TruncatedPresentation:
    """Smallest doubling of ``start`` at which the presentation is finite-dimensional
    and every product of normal words stays inside the window."""
    longest_relation = max((r.max_length for r in presentation.relations), default=0)
    window = max(start, longest_relation + 1, 2)
    while window <= _MAX_WINDOW:
        truncation = presentation.truncate(window)
        words = truncation.normal_words()
        longest = max((len(w) for w in words), default=0)
        if truncation.is_finite and 2 * longest < window:
            return truncation
        if len(words) > settings.max_dim:
            break
        window *= 2
    raise TruncationError(f"{presentation.name} is not finite-dimensional within window {_MAX_WINDOW}")


# Functionals


@dataclass(eq=False)
class HomogeneousFunctional:
    """A functional on B concentrated on the words of degree ``degree``^-1.

    Kinds: ``values`` (finite table on normal words), ``pullback`` (a dual
    basis functional of a quotient B/I), and for one-generator presentations
    ``geometric``, ``polynomial``, ``factorial``, ``recurrence``; ``character``
    multiplies per-generator images along the word.
    """

    presentation: AlgebraPresentation
    degree: GroupElement
    kind: str = "values"
    values: dict[Word, Scalar] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)
    name: str = "f"

    def __post_init__(self):
        if self.kind in ("geometric", "polynomial", "factorial", "recurrence") and len(self.presentation.names) != 1:
            raise ValueError(f"{self.kind} functionals need a one-generator presentation")
        if self.kind not in _KINDS:
            raise ValueError(f"unknown functional kind {self.kind!r}")
        self._sequence_cache: dict[int, Scalar] = {}

    @property
    def domain(self):
        return self.presentation.ctx.domain

    @property
    def support_length(self) -> Optional[int]:
        if self.kind != "values":
            return None
        return max((len(w) for w, c in self.values.items() if c), default=0)

    def __call__(self, word: Word) -> Scalar:
        if self.presentation.degree_of_word(word) != group_inv(self.degree):
            return self.domain.zero
        return _KINDS[self.kind](self, word)

    def evaluate(self, element: Mapping[Word, Scalar]) -> Scalar:
        total = self.domain.zero
        for w, c in element.items():
            v = self(w)
            if v:
                total = total + c * v
        return total

    def table(self, max_length: int) -> dict[str, Any]:
        truncation = self.presentation.truncate(max_length)
        return {
            format_word(w, self.presentation.names): self.domain.format(self(w))
            for w in truncation.normal_words()
            if self(w)
        }

    def to_dict(self, max_length: int = 6) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "degree": self.presentation.ctx.group.format_degree(self.degree),
            "values": self.table(max_length),
        }

    def _sequence(self, n: int) -> Scalar:
        if n not in self._sequence_cache:
            self._sequence_cache[n] = _SEQUENCES[self.kind](self, n)
        return self._sequence_cache[n]


def _values(f: HomogeneousFunctional, word: Word) -> Scalar:
    return f.values.get(word, f.domain.zero)


def _by_length(f: HomogeneousFunctional, word: Word) -> Scalar:
    return f._sequence(len(word))


def _geometric(f: HomogeneousFunctional, n: int) -> Scalar:
    ratio = f.params["ratio"]
    return f.domain.one if n == 0 else ratio ** n


def _polynomial(f: HomogeneousFunctional, n: int) -> Scalar:
    total = f.domain.zero
    for k, c in enumerate(f.params["coefficients"]):
        total = total + c * f.domain.coerce(n ** k)
    return total


def _factorial(f: HomogeneousFunctional, n: int) -> Scalar:
    return f.domain.coerce(math.factorial(n))


def _recurrence(f: HomogeneousFunctional, n: int) -> Scalar:
    initial = f.params["initial"]
    if n < len(initial):
        return initial[n]
    total = f.domain.zero
    for k, c in enumerate(f.params["coefficients"], start=1):
        total = total + c * f._sequence(n - k)
    return total


def _character(f: HomogeneousFunctional, word: Word) -> Scalar:
    value = f.domain.one
    for letter in word:
        value = value * f.params["images"][letter]
    return value


def _pullback(f: HomogeneousFunctional, word: Word) -> Scalar:
    quotient: AlgebraPresentation = f.params["quotient"]
    base = f.params["window"]
    window = base
    while window <= len(word):
        window *= 2
    return quotient.truncate(window).reduce_word(word).get(f.params["word"], f.domain.zero)


_KINDS = {
    "values": _values,
    "pullback": _pullback,
    "geometric": _by_length,
    "polynomial": _by_length,
    "factorial": _by_length,
    "recurrence": _by_length,
    "character": _character,
}

_SEQUENCES = {
    "geometric": _geometric,
    "polynomial": _polynomial,
    "factorial": _factorial,
    "recurrence": _recurrence,
}


def functional_from_dict(data: Mapping[str, Any], presentation: AlgebraPresentation) -> HomogeneousFunctional:
    """Functional from its JSON form, e.g. ``{"degree": "-3", "values": {"X^3": "1"}}``
    or ``{"kind": "geometric", "ratio": "2"}``."""
    ctx = presentation.ctx
    domain = ctx.domain
    kind = data.get("kind", "values")
    degree = ctx.group.parse_degree(str(data.get("degree", "")))
    name = data.get("name", "f")
    if kind == "values":
        values = {parse_word(k, presentation.names): domain.parse(v) for k, v in data.get("values", {}).items()}
        return HomogeneousFunctional(presentation, degree, "values", values, name=name)
    params: dict[str, Any] = {}
    if kind == "geometric":
        params["ratio"] = domain.parse(data["ratio"])
    elif kind == "polynomial":
        params["coefficients"] = [domain.parse(c) for c in data["coefficients"]]
    elif kind == "recurrence":
        params["coefficients"] = [domain.parse(c) for c in data["coefficients"]]
        params["initial"] = [domain.parse(c) for c in data["initial"]]
        if len(params["initial"]) < len(params["coefficients"]):
            raise ValueError("a recurrence of order d needs d initial values")
    elif kind == "character":
        images = data["images"]
        params["images"] = [domain.parse(images[n]) for n in presentation.names]
    elif kind != "factorial":
        raise ValueError(f"unknown functional kind {kind!r}")
    return HomogeneousFunctional(presentation, degree, kind, params=params, name=name)


def dual_word_functional(presentation: AlgebraPresentation, word: Word, name: Optional[str] = None) -> HomogeneousFunctional:
    """The functional that is 1 on a normal word and 0 on every other normal word."""
    degree = group_inv(presentation.degree_of_word(word))
    label = name or f"({format_word(word, presentation.names)})^*"
    return HomogeneousFunctional(presentation, degree, "values", {word: presentation.ctx.domain.one}, name=label)


# Kernel ideals and membership


@dataclass
class KernelIdealWitness:
    functional: str
    window: int
    rows: dict[GroupElement, list[Word]]
    basis: dict[GroupElement, list[Element]]
    codim: int

    @property
    def dim(self) -> int:
        return sum(len(vs) for vs in self.basis.values())

    def generators(self, domain) -> list[NCPolynomial]:
        return [NCPolynomial(dict(v), domain) for vs in self.basis.values() for v in vs]

    def restrict(self, max_length: int, domain) -> "KernelIdealWitness":
        """Intersection with the span of words of length < max_length."""
        rows: dict[GroupElement, list[Word]] = {}
        basis: dict[GroupElement, list[Element]] = {}
        for g, words in self.rows.items():
            long = [w for w in words if len(w) >= max_length]
            short = [w for w in words if len(w) < max_length]
            order = long + short
            dense = [[v.get(w, domain.zero) for w in order] for v in self.basis.get(g, [])]
            reduced, pivots = linalg.rref(dense, len(order))
            kept = [
                {w: row[len(long) + k] for k, w in enumerate(short) if row[len(long) + k]}
                for row, p in zip(reduced, pivots) if p >= len(long)
            ]
            rows[g] = short
            basis[g] = kept
        total = sum(len(ws) for ws in rows.values())
        dim = sum(len(vs) for vs in basis.values())
        return KernelIdealWitness(self.functional, max_length, rows, basis, total - dim)

    def same_span(self, other: "KernelIdealWitness", domain) -> bool:
        for g in set(self.rows) | set(other.rows):
            words = sorted(set(self.rows.get(g, [])) | set(other.rows.get(g, [])), key=deglex_key)
            mine = [[v.get(w, domain.zero) for w in words] for v in self.basis.get(g, [])]
            theirs = [[v.get(w, domain.zero) for w in words] for v in other.basis.get(g, [])]
            r = linalg.rank(mine + theirs, len(words))
            if r != linalg.rank(mine, len(words)) or r != linalg.rank(theirs, len(words)):
                return False
        return True

    def to_dict(self, presentation: AlgebraPresentation) -> dict:
        domain = presentation.ctx.domain
        return {
            "functional": self.functional,
            "window": self.window,
            "codim": self.codim,
            "basis": [
                NCPolynomial(dict(v), domain).format(presentation.names)
                for g in sorted(self.basis) for v in self.basis[g]
            ],
        }


def _window_reaches(f: HomogeneousFunctional, truncation: TruncatedPresentation, n: int) -> bool:
    support = f.support_length
    if support is not None and support >= n:
        return False
    return bool(truncation.words_of_degree(group_inv(f.degree), n))


def kernel_ideal(
    f: HomogeneousFunctional, presentation: AlgebraPresentation, n: int, degreewise: bool = True
) -> KernelIdealWitness:
    """The largest ideal inside ker f visible at truncation n, with its codimension."""
    if n < 1:
        raise TruncationError(f"truncation must be >= 1, got {n}")
    truncation = presentation.truncate(2 * n - 1)
    if not _window_reaches(f, truncation, n):
        raise TruncationError(f"truncation {n} does not reach the support of {f.name}")
    domain = presentation.ctx.domain
    words = truncation.normal_words(n)
    contexts = [(b, c) for b in words for c in truncation.normal_words(n - len(b))]

    def value(b: Word, a: Word, c: Word) -> Scalar:
        return f.evaluate(truncation.reduce_word(b + a + c))

    rows: dict[GroupElement, list[Word]] = truncation.by_degree(n)
    basis: dict[GroupElement, list[Element]] = {}
    codim = 0
    if degreewise:
        target = group_inv(f.degree)
        for g, row_words in rows.items():
            need = group_op(target, group_inv(g))
            cols = [
                (b, c) for b, c in contexts
                if group_op(truncation.degree_of_word(b), truncation.degree_of_word(c)) == need
            ]
            matrix = [[value(b, a, c) for b, c in cols] for a in row_words]
            codim += linalg.rank(matrix, len(cols))
            null = linalg.nullspace(linalg.transpose(matrix, len(row_words), len(cols)), len(row_words), domain)
            basis[g] = [{row_words[i]: x for i, x in enumerate(v) if x} for v in null]
            logger.debug(f"{f.name} at n={n}, degree {g}: {len(row_words)} x {len(cols)}")
    else:
        matrix = [[value(b, a, c) for b, c in contexts] for a in words]
        codim = linalg.rank(matrix, len(contexts))
        null = linalg.nullspace(linalg.transpose(matrix, len(words), len(contexts)), len(words), domain)
        for g, row_words in rows.items():
            components = [[v[words.index(w)] for w in row_words] for v in null]
            reduced, _ = linalg.rref(components, len(row_words))
            basis[g] = [{row_words[i]: x for i, x in enumerate(r) if x} for r in reduced]
    for g in rows:
        basis.setdefault(g, [])
    return KernelIdealWitness(f.name, n, rows, basis, codim)


def _closure_check(
    f: HomogeneousFunctional, presentation: AlgebraPresentation, witness: KernelIdealWitness
) -> bool:
    """Left and right multiples of I_f by generators stay in ker f for every context inside the window."""
    n = witness.window
    truncation = presentation.truncate(2 * n - 1)
    contexts = [(b, c) for b in truncation.normal_words(n) for c in truncation.normal_words(n - len(b))]
    domain = presentation.ctx.domain
    for vectors in witness.basis.values():
        for v in vectors:
            longest = max((len(w) for w in v), default=0)
            for k in range(len(presentation.names)):
                for b, c in contexts:
                    if len(b) + len(c) + longest + 1 >= truncation.window:
                        continue
                    for left, right in (((k,), ()), ((), (k,))):
                        total = domain.zero
                        for w, x in v.items():
                            total = total + x * f.evaluate(truncation.reduce_word(b + left + w + right + c))
                        if total:
                            return False
    return True


@dataclass
class MembershipResult:
    functional: str
    truncate: int
    window: int
    trace: list[tuple[int, int]]
    witness: Optional[KernelIdealWitness]
    closure_ok: bool

    @property
    def member(self) -> bool:
        return self.witness is not None

    @property
    def status(self) -> str:
        return "member" if self.member else f"not-member-up-to-{self.truncate}"

    @property
    def codim(self) -> Optional[int]:
        return self.witness.codim if self.witness else None

    def to_dict(self, presentation: AlgebraPresentation) -> dict:
        out = {
            "functional": self.functional,
            "status": self.status,
            "truncate": self.truncate,
            "window": self.window,
            "trace": [{"n": n, "codim": c} for n, c in self.trace],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict(presentation)
        return out


def membership(
    f: HomogeneousFunctional, presentation: AlgebraPresentation, truncate: int, window: Optional[int] = None
) -> MembershipResult:
    """Semi-decision of f in the finite dual through the kernel-ideal codimension trace."""
    window = window or settings.window
    trace: list[tuple[int, int]] = []
    last: Optional[KernelIdealWitness] = None
    longest_relation = max((r.max_length for r in presentation.relations), default=0)
    for n in range(1, truncate + 1):
        if 2 * n - 1 <= longest_relation:
            continue
        if not _window_reaches(f, presentation.truncate(2 * n - 1), n):
            continue
        last = kernel_ideal(f, presentation, n)
        trace.append((n, last.codim))
    if last is None:
        raise TruncationError(f"no truncation up to {truncate} reaches the support of {f.name}")
    codims = [c for _, c in trace]
    stable = len(codims) >= window and len(set(codims[-window:])) == 1
    closure_ok = stable and _closure_check(f, presentation, last)
    if stable and closure_ok:
        logger.info(f"{f.name} is a member with kernel ideal of codimension {last.codim}")
        return MembershipResult(f.name, truncate, window, trace, last, True)
    logger.warning(f"{f.name}: no stable kernel ideal up to N={truncate}, trace {codims}")
    return MembershipResult(f.name, truncate, window, trace, None, closure_ok)


# Good subspaces


@dataclass(eq=False)
class GoodSubspace:
    presentation: AlgebraPresentation
    space: GradedVectorSpace
    delta: GradedLinearMap
    functionals: dict[Basis, HomogeneousFunctional]
    name: str = "E"

    @property
    def dim(self) -> int:
        return self.space.total_dim

    @property
    def ctx(self) -> BraidedContext:
        return self.presentation.ctx

    def label(self, b: Basis) -> str:
        return self.functionals[b].name

    def counit_values(self) -> dict[Basis, Scalar]:
        """eps(psi) = e(psi)(1)."""
        return {b: f(()) for b, f in self.functionals.items() if f(())}

    def coalgebra(self) -> CoalgebraObject:
        e = self.ctx.group.identity
        eps = map_from_columns(
            self.space, unit_space(self.ctx.group),
            {b: {(e, 0): c} for b, c in self.counit_values().items()}, self.ctx.domain,
        )
        labels = {b: f.name for b, f in self.functionals.items()}
        return CoalgebraObject(self.space, self.delta, eps, self.ctx, self.name, labels)

    def coproduct(self, b: Basis) -> dict[tuple[Basis, Basis], Scalar]:
        layout = tensor_layout(self.space, self.space)
        out = {}
        for (g, pos), c in self.delta.column(b).items():
            x, i, y, j = layout.entries[g][pos]
            out[((x, i), (y, j))] = c
        return out

    def to_dict(self) -> dict:
        basis = self.space.basis()
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": [self.functionals[b].to_dict() for b in basis],
            "coproduct": {
                self.label(b): [
                    {"left": self.label(l), "right": self.label(r), "coefficient": self.ctx.domain.format(c)}
                    for (l, r), c in sorted(self.coproduct(b).items())
                ]
                for b in basis
            },
        }


def im_p_I_dual(
    presentation: AlgebraPresentation, ideal: Sequence[NCPolynomial], truncate: Optional[int] = None
) -> GoodSubspace:
    """(B/I)^dual embedded in B^dual by precomposition with the projection, with the
    coproduct of dual_coalgebra(B/I)."""
    quotient = presentation.with_relations(ideal, name=f"{presentation.name}/{presentation.format_ideal(ideal)}")
    truncation = finite_truncation(quotient, truncate or settings.truncate)
    algebra = truncation.as_algebra(quotient.name)
    dual = dual_coalgebra(algebra)
    index = truncation.word_index()
    functionals = {}
    for w, (g, i) in index.items():
        functionals[(group_inv(g), i)] = HomogeneousFunctional(
            presentation,
            group_inv(g),
            "pullback",
            params={"quotient": quotient, "word": w, "window": truncation.window},
            name=f"({format_word(w, presentation.names)})^* mod {presentation.format_ideal(ideal)}",
        )
    logger.info(f"Good subspace of {quotient.name}: dim {dual.carrier.total_dim}")
    return GoodSubspace(presentation, dual.carrier, dual.delta, functionals, f"({quotient.name})^dual")


def _pairs(truncation: TruncatedPresentation) -> list[tuple[Word, Word]]:
    words = truncation.normal_words()
    return [(a, b) for a in words for b in words if len(a) + len(b) < truncation.window]


def check_good_subspace(good: GoodSubspace, truncate: Optional[int] = None, check_tau: bool = True) -> AxiomReport:
    """Good-object equation, counit laws and multiplicativity of tau = e^dual o eta_B within the window.

    The tau laws are left out of the report when alpha is not symmetric on the
    degrees of the window.
    """
    report = AxiomReport(good.name, ["good-object equation", "counit", "tau multiplicative", "tau unital"])
    if good.dim == 0:
        return report
    ctx = good.ctx
    domain = ctx.domain
    alpha = ctx.alpha
    truncation = good.presentation.truncate(truncate or settings.truncate)
    coproducts = {b: good.coproduct(b) for b in good.functionals}
    degree_of = truncation.degree_of_word

    def tensor_value(psi: Basis, a: Word, b: Word) -> Scalar:
        total = domain.zero
        for (l, r), c in coproducts[psi].items():
            total = total + c * alpha(l[0], r[0]) * good.functionals[l](a) * good.functionals[r](b)
        return total

    for a, b in _pairs(truncation):
        product_ab = truncation.reduce_word(a + b)
        for psi, f in good.functionals.items():
            lhs = f.evaluate(product_ab)
            rhs = tensor_value(psi, a, b)
            if lhs != rhs:
                report.failures.append(AxiomFailure(
                    "good-object equation",
                    (f.name, format_word(a, truncation.names), format_word(b, truncation.names)),
                    f"{domain.format(lhs)} != {domain.format(rhs)}",
                ))
                break

    counit = good.counit_values()
    for psi in good.functionals:
        left: dict[Basis, Scalar] = {}
        right: dict[Basis, Scalar] = {}
        for (l, r), c in coproducts[psi].items():
            if counit.get(l):
                left[r] = left.get(r, domain.zero) + c * counit[l]
            if counit.get(r):
                right[l] = right.get(l, domain.zero) + c * counit[r]
        expected = {psi: domain.one}
        for side in (left, right):
            if {k: v for k, v in side.items() if v} != expected:
                report.failures.append(AxiomFailure("counit", (good.label(psi),), "(eps (x) id) o delta != id"))
                break

    if check_tau and not is_symmetric_on(alpha, {degree_of(w) for w in truncation.normal_words()}):
        logger.info(f"{good.name}: alpha is not symmetric on the window, tau laws skipped")
        check_tau = False
    if not check_tau:
        report.laws = [law for law in report.laws if not law.startswith("tau")]
        return report

    def tau(element: Element, degree: GroupElement) -> dict[Basis, Scalar]:
        scale = 1 / alpha(degree, degree)
        return {psi: scale * v for psi, f in good.functionals.items() if (v := f.evaluate(element))}

    one = tau(truncation.reduce_word(()), ctx.group.identity)
    if {k: v for k, v in one.items() if v} != {k: v for k, v in counit.items() if v}:
        report.failures.append(AxiomFailure("tau unital", (), "tau(1) differs from the counit"))
    for a, b in _pairs(truncation):
        da, db = degree_of(a), degree_of(b)
        lhs = tau(truncation.reduce_word(a + b), group_op(da, db))
        ta = tau({a: domain.one}, da)
        tb = tau({b: domain.one}, db)
        rhs = {}
        for psi in good.functionals:
            total = domain.zero
            for (l, r), c in coproducts[psi].items():
                if ta.get(l) and tb.get(r):
                    total = total + c * alpha(da, db) * ta[l] * tb[r]
            if total:
                rhs[psi] = total
        if lhs != rhs:
            report.failures.append(AxiomFailure(
                "tau multiplicative",
                (format_word(a, truncation.names), format_word(b, truncation.names)),
                "tau(ab) != tau(a) tau(b)",
            ))
            break
    return report


def sum_of_good(goods: Sequence[GoodSubspace], truncate: Optional[int] = None) -> GoodSubspace:
    """Span union of good subspaces of the same B^dual, merged by echelon form."""
    if not goods:
        raise ValueError("sum_of_good needs at least one good subspace")
    presentation = goods[0].presentation
    if any(g.presentation is not presentation for g in goods):
        raise ValueError("good subspaces must share their presentation")
    ctx = presentation.ctx
    domain = ctx.domain
    truncation = presentation.truncate(truncate or settings.truncate)

    candidates: dict[GroupElement, list[tuple[int, Basis]]] = {}
    for k, good in enumerate(goods):
        for b in good.space.basis():
            candidates.setdefault(b[0], []).append((k, b))

    kept: dict[GroupElement, list[tuple[int, Basis]]] = {}
    vectors: dict[GroupElement, list[list[Scalar]]] = {}
    coordinates: dict[tuple[int, Basis], dict[Basis, Scalar]] = {}
    for h, items in sorted(candidates.items()):
        words = truncation.words_of_degree(group_inv(h))
        kept[h], vectors[h] = [], []
        for k, b in items:
            vec = [goods[k].functionals[b](w) for w in words]
            if linalg.rank(vectors[h] + [vec], len(words)) > len(vectors[h]):
                vectors[h].append(vec)
                kept[h].append((k, b))
        for k, b in items:
            vec = [goods[k].functionals[b](w) for w in words]
            coords = linalg.coordinates(vectors[h], vec, len(words), domain)
            coordinates[(k, b)] = {(h, i): c for i, c in enumerate(coords) if c}

    space = GradedVectorSpace(ctx.group, tuple((h, len(items)) for h, items in kept.items() if items))

    def merged_coproduct(k: int, b: Basis) -> dict[Basis, Scalar]:
        out: dict[Basis, Scalar] = {}
        for (l, r), c in goods[k].coproduct(b).items():
            for ml, cl in coordinates[(k, l)].items():
                for mr, cr in coordinates[(k, r)].items():
                    key = tensor_basis(space, space, ml, mr)
                    out[key] = out.get(key, domain.zero) + c * cl * cr
        return {key: v for key, v in out.items() if v}

    columns: dict[Basis, dict[Basis, Scalar]] = {}
    functionals: dict[Basis, HomogeneousFunctional] = {}
    for h, items in kept.items():
        for i, (k, b) in enumerate(items):
            columns[(h, i)] = merged_coproduct(k, b)
            functionals[(h, i)] = goods[k].functionals[b]
    for (k, b), coords in coordinates.items():
        expected: dict[Basis, Scalar] = {}
        for target, c in coords.items():
            for key, v in columns[target].items():
                expected[key] = expected.get(key, domain.zero) + c * v
        expected = {key: v for key, v in expected.items() if v}
        if merged_coproduct(k, b) != expected:
            raise InconsistentCoproductError(
                f"coproduct of {goods[k].label(b)} disagrees with the merged coproduct"
            )
    delta = map_from_columns(space, tensor_space(space, space), columns, domain)
    logger.info(f"Merged {len(goods)} good subspaces into dimension {space.total_dim}")
    return GoodSubspace(presentation, space, delta, functionals, f"{presentation.name}^bullet")


# Ideal families and the assembled finite dual


def enumerate_power_ideals(
    presentation: AlgebraPresentation, codim_bound: Optional[int] = None, truncate: Optional[int] = None
) -> list[list[NCPolynomial]]:
    """Ideals spanned by all words of length >= l, for every l with codimension <= bound.

    The zero ideal closes the list when the algebra vanishes in some length.
    """
    bound = settings.codim_bound if codim_bound is None else codim_bound
    truncation = presentation.truncate(truncate or settings.truncate)
    if not truncation.homogeneous:
        raise ValueError("power ideals need relations homogeneous in word length")
    domain = presentation.ctx.domain
    family = []
    for length in range(1, truncation.window):
        codim = len(truncation.normal_words(length))
        if codim > bound:
            break
        top = truncation.normal[length]
        family.append([NCPolynomial.word(w, domain) for w in top])
        if not top:
            break
    return family


@dataclass
class FiniteDualResult:
    presentation: AlgebraPresentation
    family: list[list[NCPolynomial]]
    goods: list[GoodSubspace]
    merged: GoodSubspace
    memberships: list[MembershipResult]
    report: AxiomReport

    @property
    def coalgebra(self) -> CoalgebraObject:
        return self.merged.coalgebra()

    def to_dict(self) -> dict:
        p = self.presentation
        return {
            "presentation": p.to_dict(),
            "family": [p.format_ideal(gens) for gens in self.family],
            "members": [m.to_dict(p) for m in self.memberships],
            "finite_dual": self.merged.to_dict(),
        }


def finite_dual(
    presentation: AlgebraPresentation,
    truncate: Optional[int] = None,
    ideal_family: Sequence[Sequence[NCPolynomial]] = (),
    functionals: Sequence[HomogeneousFunctional] = (),
    window: Optional[int] = None,
) -> FiniteDualResult:
    """Sum of the good subspaces (B/I)^dual over the family, widened by the witness ideals
    of the member functionals."""
    truncate = truncate or settings.truncate
    memberships = [membership(f, presentation, truncate, window) for f in functionals]
    family = [list(gens) for gens in ideal_family]
    for m in memberships:
        if m.witness is not None:
            family.append(m.witness.generators(presentation.ctx.domain))
    if not family:
        raise ValueError("finite_dual needs a non-empty ideal family or a member functional")
    goods = [im_p_I_dual(presentation, gens, truncate) for gens in family]
    merged = sum_of_good(goods, truncate)
    report = check_good_subspace(merged, truncate)
    return FiniteDualResult(presentation, family, goods, merged, memberships, report)


# Brute force on finite-dimensional algebras


def _rref_subspaces(d: int, field: PrimeField) -> list[list[list[Scalar]]]:
    """All subspaces of F_p^d as reduced row echelon bases."""
    elements = field.elements()
    out = []
    for r in range(d + 1):
        for pivots in combinations(range(d), r):
            free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
            for values in product(elements, repeat=len(free)):
                rows = [[field.zero] * d for _ in range(r)]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one
                for (i, c), v in zip(free, values):
                    rows[i][c] = v
                out.append(rows)
    return out


def _in_rowspace(rows: list[list[Scalar]], vec: list[Scalar], d: int) -> bool:
    return linalg.rank(rows + [vec], d) == len(rows)


def brute_force_min_codim(
    f: HomogeneousFunctional, presentation: AlgebraPresentation, bound: Optional[int] = None
) -> Optional[int]:
    """Least codimension of a graded two-sided ideal inside ker f, or None above the bound."""
    bound = settings.codim_bound if bound is None else bound
    field = presentation.ctx.domain
    if not isinstance(field, PrimeField):
        raise ValueError("brute force runs over prime fields only")
    truncation = finite_truncation(presentation, settings.truncate)
    words = truncation.normal_words()
    if len(words) > 6:
        raise ValueError(f"brute force is limited to dimension 6, got {len(words)}")
    by_degree = truncation.by_degree()
    degrees = sorted(by_degree)
    position = {w: (g, by_degree[g].index(w)) for g in degrees for w in by_degree[g]}

    def split(element: Element) -> dict[GroupElement, list[Scalar]]:
        out = {g: [field.zero] * len(by_degree[g]) for g in degrees}
        for w, c in element.items():
            g, i = position[w]
            out[g][i] = c
        return out

    target = group_inv(f.degree)
    options: dict[GroupElement, list[list[list[Scalar]]]] = {}
    for g in degrees:
        subspaces = _rref_subspaces(len(by_degree[g]), field)
        if g == target:
            fv = [f(w) for w in by_degree[g]]
            subspaces = [s for s in subspaces if all(not sum((a * b for a, b in zip(row, fv)), field.zero) for row in s)]
        options[g] = subspaces

    def is_ideal(choice: dict[GroupElement, list[list[Scalar]]]) -> bool:
        for g in degrees:
            for row in choice[g]:
                element = {w: c for w, c in zip(by_degree[g], row) if c}
                for w in words:
                    for product_element in (
                        truncation.multiply({w: field.one}, element),
                        truncation.multiply(element, {w: field.one}),
                    ):
                        for h, vec in split(product_element).items():
                            if any(vec) and not _in_rowspace(choice[h], vec, len(vec)):
                                return False
        return True

    best: Optional[int] = None
    for combo in product(*(options[g] for g in degrees)):
        dim = sum(len(s) for s in combo)
        codim = len(words) - dim
        if codim > bound or (best is not None and codim >= best):
            continue
        if is_ideal(dict(zip(degrees, combo))):
            best = codim
    return best
