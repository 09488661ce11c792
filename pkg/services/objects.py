"""Algebras, coalgebras and bialgebras in Vec_G^alpha by structure constants.

Axioms are verified on basis elements only, which suffices by linearity.
Checkers never raise on a failed law: they return an ``AxiomReport`` listing
each failure with the basis elements that witness it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Optional

from config.logger import get_logger
from services.grading import AbelianGroup, GroupElement, group_op, is_symmetric_on
from services.gvect import (
    Basis,
    BraidedContext,
    GradedLinearMap,
    GradedVector,
    GradedVectorSpace,
    compose,
    map_from_columns,
    tensor_basis,
    tensor_layout,
    tensor_map,
    tensor_space,
    unit_space,
)
from utils import linalg
from utils.scalars import Scalar

logger = get_logger(__name__)

Vector = dict[Basis, Scalar]
TensorVector = dict[tuple[Basis, Basis], Scalar]


class IdealError(ValueError):
    """Raised for inhomogeneous ideal generators or a failed ideal check."""
    pass


@dataclass(frozen=True)
class AxiomFailure:
    law: str
    witness: tuple[str, ...]
    detail: str

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": list(self.witness), "detail": self.detail}


@dataclass
class AxiomReport:
    subject: str
    laws: list[str] = field(default_factory=list)
    failures: list[AxiomFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed_laws(self) -> list[str]:
        return sorted({f.law for f in self.failures})

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport(self.subject, self.laws + other.laws, self.failures + other.failures)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "laws": self.laws,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
        }


def _default_label(space: GradedVectorSpace, b: Basis) -> str:
    return f"{space.group.format_degree(b[0]) or 'e'}#{b[1]}"


@dataclass(frozen=True, eq=False)
class AlgebraObject:
    carrier: GradedVectorSpace
    m: GradedLinearMap
    u: GradedLinearMap
    ctx: BraidedContext
    name: str = "algebra"
    labels: Optional[dict[Basis, str]] = None

    def __post_init__(self):
        if self.m.source != tensor_space(self.carrier, self.carrier) or self.m.target != self.carrier:
            raise ValueError(f"{self.name}: multiplication must map A (x) A -> A")
        if self.u.source != unit_space(self.carrier.group) or self.u.target != self.carrier:
            raise ValueError(f"{self.name}: unit must map k -> A")

    def label(self, b: Basis) -> str:
        return (self.labels or {}).get(b) or _default_label(self.carrier, b)

    @property
    def dim(self) -> int:
        return self.carrier.total_dim


@dataclass(frozen=True, eq=False)
class CoalgebraObject:
    carrier: GradedVectorSpace
    delta: GradedLinearMap
    eps: GradedLinearMap
    ctx: BraidedContext
    name: str = "coalgebra"
    labels: Optional[dict[Basis, str]] = None

    def __post_init__(self):
        if self.delta.source != self.carrier or self.delta.target != tensor_space(self.carrier, self.carrier):
            raise ValueError(f"{self.name}: comultiplication must map C -> C (x) C")
        if self.eps.source != self.carrier or self.eps.target != unit_space(self.carrier.group):
            raise ValueError(f"{self.name}: counit must map C -> k")

    def label(self, b: Basis) -> str:
        return (self.labels or {}).get(b) or _default_label(self.carrier, b)

    @property
    def dim(self) -> int:
        return self.carrier.total_dim


@dataclass(frozen=True, eq=False)
class BialgebraObject:
    algebra: AlgebraObject
    coalgebra: CoalgebraObject

    def __post_init__(self):
        if self.algebra.carrier != self.coalgebra.carrier:
            raise ValueError("algebra and coalgebra parts live on different carriers")

    @property
    def carrier(self) -> GradedVectorSpace:
        return self.algebra.carrier

    @property
    def ctx(self) -> BraidedContext:
        return self.algebra.ctx

    @property
    def name(self) -> str:
        return self.algebra.name

    def label(self, b: Basis) -> str:
        return self.algebra.label(b)


# Sparse evaluation of structure maps


def _add_into(out: dict, key, value) -> None:
    total = out.get(key, 0) + value
    if total:
        out[key] = total
    else:
        out.pop(key, None)


def multiply(a: AlgebraObject, x: Vector, y: Vector) -> Vector:
    out: Vector = {}
    for bx, cx in x.items():
        for by, cy in y.items():
            column = a.m.column(tensor_basis(a.carrier, a.carrier, bx, by))
            for t, v in column.items():
                _add_into(out, t, cx * cy * v)
    return out


def unit_vector(a: AlgebraObject) -> Vector:
    return a.u.column((a.carrier.group.identity, 0))


def comultiply(c: CoalgebraObject, x: Vector) -> TensorVector:
    layout = tensor_layout(c.carrier, c.carrier)
    out: TensorVector = {}
    for b, coefficient in x.items():
        for (g, pos), v in c.delta.column(b).items():
            l_deg, i, r_deg, j = layout.entries[g][pos]
            _add_into(out, ((l_deg, i), (r_deg, j)), coefficient * v)
    return out


def counit(c: CoalgebraObject, x: Vector) -> Scalar:
    total = c.ctx.domain.zero
    for b, coefficient in x.items():
        value = c.eps.column(b).get((c.carrier.group.identity, 0))
        if value:
            total = total + coefficient * value
    return total


def _basis_vector(b: Basis, ctx: BraidedContext) -> Vector:
    return {b: ctx.domain.one}


def _format_vector(vec: Mapping, label, domain) -> str:
    if not vec:
        return "0"
    return " + ".join(f"{domain.format(c)}*{label(k)}" for k, c in sorted(vec.items(), key=lambda kv: str(kv[0])))


# Checkers


def check_algebra(a: AlgebraObject) -> AxiomReport:
    report = AxiomReport(a.name, ["associativity", "left unit", "right unit"])
    basis = a.carrier.basis()
    one = unit_vector(a)
    domain = a.ctx.domain
    for x, y, z in product(basis, repeat=3):
        vx, vy, vz = (_basis_vector(b, a.ctx) for b in (x, y, z))
        left = multiply(a, multiply(a, vx, vy), vz)
        right = multiply(a, vx, multiply(a, vy, vz))
        if left != right:
            report.failures.append(AxiomFailure(
                "associativity",
                (a.label(x), a.label(y), a.label(z)),
                f"(xy)z = {_format_vector(left, a.label, domain)} but x(yz) = {_format_vector(right, a.label, domain)}",
            ))
    for x in basis:
        vx = _basis_vector(x, a.ctx)
        for law, value in (("left unit", multiply(a, one, vx)), ("right unit", multiply(a, vx, one))):
            if value != vx:
                report.failures.append(AxiomFailure(
                    law, (a.label(x),), f"got {_format_vector(value, a.label, domain)}"
                ))
    if not report.passed:
        logger.info(f"{a.name}: algebra laws failed: {report.failed_laws()}")
    return report


def check_coalgebra(c: CoalgebraObject) -> AxiomReport:
    report = AxiomReport(c.name, ["coassociativity", "left counit", "right counit"])
    domain = c.ctx.domain
    for x in c.carrier.basis():
        dx = comultiply(c, _basis_vector(x, c.ctx))
        left: dict = {}
        right: dict = {}
        for (l, r), coefficient in dx.items():
            for (l1, l2), v in comultiply(c, _basis_vector(l, c.ctx)).items():
                _add_into(left, (l1, l2, r), coefficient * v)
            for (r1, r2), v in comultiply(c, _basis_vector(r, c.ctx)).items():
                _add_into(right, (l, r1, r2), coefficient * v)
        if left != right:
            report.failures.append(AxiomFailure(
                "coassociativity", (c.label(x),), "(delta (x) id) delta != (id (x) delta) delta"
            ))
        left_counit: Vector = {}
        right_counit: Vector = {}
        for (l, r), coefficient in dx.items():
            el = counit(c, _basis_vector(l, c.ctx))
            er = counit(c, _basis_vector(r, c.ctx))
            if el:
                _add_into(left_counit, r, coefficient * el)
            if er:
                _add_into(right_counit, l, coefficient * er)
        target = _basis_vector(x, c.ctx)
        for law, value in (("left counit", left_counit), ("right counit", right_counit)):
            if value != target:
                report.failures.append(AxiomFailure(
                    law, (c.label(x),), f"got {_format_vector(value, c.label, domain)}"
                ))
    if not report.passed:
        logger.info(f"{c.name}: coalgebra laws failed: {report.failed_laws()}")
    return report


def braided_product(h: BialgebraObject, x: TensorVector, y: TensorVector) -> TensorVector:
    """(m (x) m) o (id (x) c (x) id) on elements of H (x) H."""
    alpha = h.ctx.alpha
    out: TensorVector = {}
    for (a1, a2), ca in x.items():
        for (b1, b2), cb in y.items():
            twist = alpha(a2[0], b1[0])
            left = multiply(h.algebra, {a1: ca}, {b1: cb})
            right = multiply(h.algebra, {a2: twist}, {b2: h.ctx.domain.one})
            for l, cl in left.items():
                for r, cr in right.items():
                    _add_into(out, (l, r), cl * cr)
    return out


def _format_tensor(vec: TensorVector, label, domain) -> str:
    if not vec:
        return "0"
    return " + ".join(
        f"{domain.format(c)}*{label(l)}(x){label(r)}" for (l, r), c in sorted(vec.items(), key=lambda kv: str(kv[0]))
    )


def check_bialgebra(h: BialgebraObject) -> AxiomReport:
    """Compatibility of the coalgebra maps with the braided multiplication on H (x) H."""
    report = AxiomReport(h.name, [
        "delta multiplicative", "counit multiplicative", "delta unital", "counit unital",
    ])
    a, c = h.algebra, h.coalgebra
    domain = h.ctx.domain
    basis = h.carrier.basis()
    for x, y in product(basis, repeat=2):
        vx, vy = _basis_vector(x, h.ctx), _basis_vector(y, h.ctx)
        xy = multiply(a, vx, vy)
        lhs = comultiply(c, xy)
        rhs = braided_product(h, comultiply(c, vx), comultiply(c, vy))
        if lhs != rhs:
            report.failures.append(AxiomFailure(
                "delta multiplicative",
                (h.label(x), h.label(y)),
                f"delta(xy) = {_format_tensor(lhs, h.label, domain)} but "
                f"delta(x)delta(y) = {_format_tensor(rhs, h.label, domain)}",
            ))
        exy = counit(c, xy)
        ex_ey = counit(c, vx) * counit(c, vy)
        if exy != ex_ey:
            report.failures.append(AxiomFailure(
                "counit multiplicative",
                (h.label(x), h.label(y)),
                f"eps(xy) = {domain.format(exy)} but eps(x)eps(y) = {domain.format(ex_ey)}",
            ))
    one = unit_vector(a)
    delta_one = comultiply(c, one)
    one_one: TensorVector = {}
    for l, cl in one.items():
        for r, cr in one.items():
            _add_into(one_one, (l, r), cl * cr)
    if delta_one != one_one:
        report.failures.append(AxiomFailure("delta unital", ("1",), "delta(1) != 1 (x) 1"))
    if counit(c, one) != domain.one:
        report.failures.append(AxiomFailure("counit unital", ("1",), "eps(1) != 1"))
    if not report.passed:
        logger.info(f"{h.name}: bialgebra compatibility failed: {report.failed_laws()}")
    return report


def check_object(obj) -> AxiomReport:
    """Every applicable axiom check for an algebra, coalgebra or bialgebra."""
    if isinstance(obj, AlgebraObject):
        return check_algebra(obj)
    if isinstance(obj, CoalgebraObject):
        return check_coalgebra(obj)
    report = check_algebra(obj.algebra).merge(check_coalgebra(obj.coalgebra))
    return report.merge(check_bialgebra(obj))


def is_algebra_morphism(f: GradedLinearMap, a: AlgebraObject, b: AlgebraObject) -> bool:
    if f.source != a.carrier or f.target != b.carrier or not f.shift.is_identity:
        return False
    return compose(f, a.m) == compose(b.m, tensor_map(f, f)) and compose(f, a.u) == b.u


def is_coalgebra_morphism(f: GradedLinearMap, c: CoalgebraObject, d: CoalgebraObject) -> bool:
    if f.source != c.carrier or f.target != d.carrier or not f.shift.is_identity:
        return False
    return compose(tensor_map(f, f), c.delta) == compose(d.delta, f) and compose(d.eps, f) == c.eps


# Constructors


def algebra_from_table(
    ctx: BraidedContext,
    carrier: GradedVectorSpace,
    table: Mapping[tuple[Basis, Basis], Mapping[Basis, Scalar]],
    unit: Mapping[Basis, Scalar],
    name: str = "algebra",
    labels: Optional[dict[Basis, str]] = None,
) -> AlgebraObject:
    """Algebra from products of basis pairs; missing pairs multiply to zero."""
    columns = {tensor_basis(carrier, carrier, x, y): dict(v) for (x, y), v in table.items()}
    m = map_from_columns(tensor_space(carrier, carrier), carrier, columns, ctx.domain)
    u = map_from_columns(unit_space(ctx.group), carrier, {(ctx.group.identity, 0): dict(unit)}, ctx.domain)
    return AlgebraObject(carrier, m, u, ctx, name, labels)


def coalgebra_from_table(
    ctx: BraidedContext,
    carrier: GradedVectorSpace,
    table: Mapping[Basis, Mapping[tuple[Basis, Basis], Scalar]],
    counit_values: Mapping[Basis, Scalar],
    name: str = "coalgebra",
    labels: Optional[dict[Basis, str]] = None,
) -> CoalgebraObject:
    target = tensor_space(carrier, carrier)
    columns = {
        x: {tensor_basis(carrier, carrier, l, r): c for (l, r), c in image.items()}
        for x, image in table.items()
    }
    delta = map_from_columns(carrier, target, columns, ctx.domain)
    e = ctx.group.identity
    eps = map_from_columns(
        carrier,
        unit_space(ctx.group),
        {x: {(e, 0): c} for x, c in counit_values.items() if c},
        ctx.domain,
    )
    return CoalgebraObject(carrier, delta, eps, ctx, name, labels)


def ground_field(ctx: BraidedContext) -> BialgebraObject:
    e = ctx.group.identity
    one = (e, 0)
    carrier = unit_space(ctx.group)
    labels = {one: "1"}
    k = ctx.domain.one
    algebra = algebra_from_table(ctx, carrier, {(one, one): {one: k}}, {one: k}, "k", labels)
    coalgebra = coalgebra_from_table(ctx, carrier, {one: {(one, one): k}}, {one: k}, "k", labels)
    return BialgebraObject(algebra, coalgebra)


def group_algebra(ctx: BraidedContext, torsion: Iterable[int], self_graded: bool = False) -> BialgebraObject:
    """Group algebra of Z/n_1 + ... + Z/n_k with group-like basis.

    Self-graded places each group element in its own degree and needs the
    context group to be that group. Compatibility with the braided product
    holds exactly when alpha is 1 on the support.
    """
    group = AbelianGroup(0, tuple(torsion))
    elements = group.elements()
    if self_graded:
        if ctx.group != group:
            raise ValueError(f"self-graded group algebra needs context group {group.describe()}")
        basis = {g: (g, 0) for g in elements}
        carrier = GradedVectorSpace(ctx.group, tuple((g, 1) for g in elements))
    else:
        e = ctx.group.identity
        basis = {g: (e, i) for i, g in enumerate(elements)}
        carrier = GradedVectorSpace(ctx.group, ((e, len(elements)),))
    k = ctx.domain.one
    labels = {b: f"g[{group.format_degree(g)}]" for g, b in basis.items()}
    mult = {(basis[g], basis[h]): {basis[group_op(g, h)]: k} for g in elements for h in elements}
    comult = {basis[g]: {(basis[g], basis[g]): k} for g in elements}
    support = carrier.degrees
    plain = all(ctx.alpha(x, y) == 1 for x in support for y in support)
    name = f"k[{'x'.join(f'Z{n}' for n in group.torsion) or '1'}]"
    if self_graded:
        name += " self-graded"
    if not plain:
        name += " (braided product twists; not a color bialgebra)"
    algebra = algebra_from_table(ctx, carrier, mult, {basis[group.identity]: k}, name, labels)
    coalgebra = coalgebra_from_table(ctx, carrier, comult, {b: k for b in basis.values()}, name, labels)
    return BialgebraObject(algebra, coalgebra)


def truncated_polynomial(ctx: BraidedContext, degree: GroupElement, n: int) -> AlgebraObject:
    """k[X]/(X^n) with X in the given degree."""
    if n < 1:
        raise ValueError(f"truncation must be >= 1, got {n}")
    degrees = [ctx.group.identity]
    for _ in range(1, n):
        degrees.append(group_op(degrees[-1], degree))
    counts: dict[GroupElement, int] = {}
    basis: list[Basis] = []
    for g in degrees:
        basis.append((g, counts.get(g, 0)))
        counts[g] = counts.get(g, 0) + 1
    carrier = GradedVectorSpace(ctx.group, tuple(counts.items()))
    k = ctx.domain.one
    labels = {b: "1" if i == 0 else ("X" if i == 1 else f"X^{i}") for i, b in enumerate(basis)}
    mult = {
        (basis[i], basis[j]): {basis[i + j]: k}
        for i in range(n) for j in range(n) if i + j < n
    }
    name = f"k[X]/(X^{n})"
    return algebra_from_table(ctx, carrier, mult, {basis[0]: k}, name, labels)


def super_exterior(ctx: BraidedContext) -> BialgebraObject:
    """Exterior algebra on one primitive generator x in the last torsion degree."""
    if not ctx.group.torsion or ctx.group.torsion[-1] % 2:
        raise ValueError("the exterior algebra needs a torsion generator of even order")
    generators = ctx.group.generators()
    odd = generators[-1]
    if ctx.group.torsion[-1] != 2:
        odd = ctx.group.element(
            c * (ctx.group.torsion[-1] // 2) for c in odd.coords
        )
    e = ctx.group.identity
    one, x = (e, 0), (odd, 0)
    carrier = GradedVectorSpace(ctx.group, ((e, 1), (odd, 1)))
    k = ctx.domain.one
    labels = {one: "1", x: "x"}
    mult = {(one, one): {one: k}, (one, x): {x: k}, (x, one): {x: k}}
    comult = {one: {(one, one): k}, x: {(x, one): k, (one, x): k}}
    algebra = algebra_from_table(ctx, carrier, mult, {one: k}, "Lambda(x)", labels)
    coalgebra = coalgebra_from_table(ctx, carrier, comult, {one: k}, "Lambda(x)", labels)
    return BialgebraObject(algebra, coalgebra)


# Special elements


def primitive_elements(h: BialgebraObject) -> list[Vector]:
    """Basis of {x : delta(x) = x (x) 1 + 1 (x) x}, degree by degree."""
    one = unit_vector(h.algebra)
    domain = h.ctx.domain
    result: list[Vector] = []
    for g, d in h.carrier.dims:
        columns = []
        for i in range(d):
            b = (g, i)
            image = comultiply(h.coalgebra, {b: domain.one})
            for o, c in one.items():
                _add_into(image, (b, o), -c)
                _add_into(image, (o, b), -c)
            columns.append(image)
        keys = sorted({k for col in columns for k in col}, key=str)
        rows = [[col.get(k, domain.zero) for col in columns] for k in keys]
        for vec in linalg.nullspace(rows, d, domain):
            result.append({(g, i): c for i, c in enumerate(vec) if c})
    return result


def group_like_elements(h: BialgebraObject) -> list[Basis]:
    domain = h.ctx.domain
    found = []
    for b in h.carrier.basis():
        v = {b: domain.one}
        if comultiply(h.coalgebra, v) == {(b, b): domain.one} and counit(h.coalgebra, v) == domain.one:
            found.append(b)
    return found


# Graded ideals and quotients


def homogeneous_components(vec: GradedVector) -> dict[GroupElement, GradedVector]:
    parts: dict[GroupElement, dict] = {}
    for (g, i), c in vec.entries.items():
        parts.setdefault(g, {})[(g, i)] = c
    return {g: GradedVector(vec.space, entries) for g, entries in sorted(parts.items())}


@dataclass(frozen=True, eq=False)
class GradedIdeal:
    ambient: AlgebraObject
    basis: tuple[GradedVector, ...]
    codim: int

    @property
    def dim(self) -> int:
        return self.ambient.dim - self.codim


def _degree_rows(a: AlgebraObject, vectors: Iterable[Vector]) -> dict[GroupElement, list[list[Scalar]]]:
    rows: dict[GroupElement, list[list[Scalar]]] = {}
    for vec in vectors:
        degrees = {g for g, _ in vec}
        if len(degrees) > 1:
            raise IdealError(f"inhomogeneous vector with degrees {sorted(str(g) for g in degrees)}")
        for g in degrees:
            row = [a.ctx.domain.zero] * a.carrier.dim(g)
            for (_, i), c in vec.items():
                row[i] = c
            rows.setdefault(g, []).append(row)
    return rows


def _span_basis(rows: dict[GroupElement, list[list[Scalar]]], a: AlgebraObject) -> dict[GroupElement, list[list[Scalar]]]:
    return {g: linalg.rref(r, a.carrier.dim(g))[0] for g, r in rows.items()}


@dataclass
class IdealCheck:
    is_ideal: bool
    codim: int
    witness: Optional[str] = None


def is_graded_ideal(a: AlgebraObject, basis: Iterable[GradedVector]) -> IdealCheck:
    basis = tuple(basis)
    vectors = [dict(v.entries) for v in basis]
    for v in basis:
        if not v.is_homogeneous:
            raise IdealError("ideal basis vectors must be homogeneous")
    span = _span_basis(_degree_rows(a, vectors), a)
    codim = a.dim - sum(len(r) for r in span.values())
    for g, rows in span.items():
        for row in rows:
            vec = {(g, i): c for i, c in enumerate(row) if c}
            for b in a.carrier.basis():
                bv = {b: a.ctx.domain.one}
                for side, product_vec in (("left", multiply(a, bv, vec)), ("right", multiply(a, vec, bv))):
                    if not product_vec:
                        continue
                    (h,) = {d for d, _ in product_vec}
                    target_rows = span.get(h, [])
                    dense = [a.ctx.domain.zero] * a.carrier.dim(h)
                    for (_, i), c in product_vec.items():
                        dense[i] = c
                    if not linalg.in_span(target_rows, dense, a.carrier.dim(h)):
                        return IdealCheck(False, codim, f"{side} product with {a.label(b)} leaves the span in degree {h}")
    return IdealCheck(True, codim)


def ideal_from_generators(a: AlgebraObject, generators: Iterable[Vector]) -> list[Vector]:
    """Basis of the two-sided ideal generated by (possibly inhomogeneous) vectors."""
    order = {b: k for k, b in enumerate(a.carrier.basis())}
    echelon = linalg.SparseEchelon(order=lambda key: order[key])
    pending = [dict(v) for v in generators]
    basis = a.carrier.basis()
    while pending:
        vec = pending.pop()
        if not echelon.add(vec):
            continue
        for b in basis:
            bv = {b: a.ctx.domain.one}
            pending.append(multiply(a, bv, vec))
            pending.append(multiply(a, vec, bv))
    return [dict(row) for row in echelon.rows.values()]


def make_ideal(a: AlgebraObject, vectors: Iterable[Vector]) -> GradedIdeal:
    """Graded ideal from homogeneous vectors; raises IdealError when not closed."""
    basis = tuple(GradedVector(a.carrier, dict(v)) for v in vectors)
    check = is_graded_ideal(a, basis)
    if not check.is_ideal:
        raise IdealError(f"not a two-sided ideal of {a.name}: {check.witness}")
    return GradedIdeal(a, basis, check.codim)


@dataclass(frozen=True, eq=False)
class Quotient:
    algebra: AlgebraObject
    projection: GradedLinearMap
    inclusion: GradedLinearMap
    ideal_space: GradedVectorSpace
    complement: dict[GroupElement, list[int]]


def quotient_by_ideal(a: AlgebraObject, ideal: GradedIdeal) -> Quotient:
    """B/I with the complement of the echelon pivot columns as basis."""
    if ideal.ambient is not a:
        check = is_graded_ideal(a, ideal.basis)
        if not check.is_ideal:
            raise IdealError(f"not a two-sided ideal of {a.name}: {check.witness}")
    domain = a.ctx.domain
    span = _span_basis(_degree_rows(a, [dict(v.entries) for v in ideal.basis]), a)
    pivots = {g: linalg.rref(rows, a.carrier.dim(g))[1] for g, rows in span.items()}
    complement = {
        g: [c for c in range(d) if c not in set(pivots.get(g, []))] for g, d in a.carrier.dims
    }
    quotient_space = GradedVectorSpace(
        a.carrier.group, tuple((g, len(cs)) for g, cs in complement.items())
    )
    ideal_space = GradedVectorSpace(a.carrier.group, tuple((g, len(r)) for g, r in span.items()))

    columns: dict[Basis, Vector] = {}
    for g, d in a.carrier.dims:
        position = {c: k for k, c in enumerate(complement[g])}
        for c in range(d):
            if c in position:
                columns[(g, c)] = {(g, position[c]): domain.one}
                continue
            r = pivots[g].index(c)
            row = span[g][r]
            columns[(g, c)] = {(g, position[j]): -row[j] for j in complement[g] if row[j]}
    projection = map_from_columns(a.carrier, quotient_space, columns, domain)
    inclusion = map_from_columns(
        ideal_space,
        a.carrier,
        {(g, r): {(g, i): c for i, c in enumerate(row) if c} for g, rows in span.items() for r, row in enumerate(rows)},
        domain,
    )

    def lift(b: Basis) -> Vector:
        g, k = b
        return {(g, complement[g][k]): domain.one}

    def project(vec: Vector) -> Vector:
        out: Vector = {}
        for b, c in vec.items():
            for t, v in projection.column(b).items():
                _add_into(out, t, c * v)
        return out

    qbasis = quotient_space.basis()
    table = {(x, y): project(multiply(a, lift(x), lift(y))) for x in qbasis for y in qbasis}
    unit = project(unit_vector(a))
    labels = {b: a.label((b[0], complement[b[0]][b[1]])) for b in qbasis}
    algebra = algebra_from_table(a.ctx, quotient_space, table, unit, f"{a.name}/I", labels)
    logger.debug(f"Quotient of {a.name}: dims {quotient_space.describe()['dims']}")
    return Quotient(algebra, projection, inclusion, ideal_space, complement)


def alpha_symmetric_on(obj) -> bool:
    return is_symmetric_on(obj.ctx.alpha, obj.carrier.degrees)
