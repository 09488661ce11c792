"""Duals of finite-dimensional algebras, coalgebras and color bialgebras.

The algebra structure on C^dual is m = delta^dual o phi2(C, C), u = eps^dual o phi0.
The coalgebra structure on A^dual inverts the lax structure:
delta = phi2(A, A)^-1 o m^dual, eps = phi0^-1 o u^dual. With ``colax="psi"`` the
comparison maps are the composites psi2, psi0 from services.gvect instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Literal, Optional, Union

from config.logger import get_logger
from config.settings import settings
from services.gvect import (
    Basis,
    BraidedContext,
    GradedLinearMap,
    compose,
    dual_map,
    dual_space,
    eta_map,
    inverse,
    is_invertible,
    j_map,
    map_from_columns,
    phi0,
    phi2,
    psi0,
    psi2,
    tensor_basis,
    tensor_map,
)
from services.grading import group_inv, is_symmetric_on, monodromy_order_divides
from services.objects import (
    AlgebraObject,
    AxiomFailure,
    AxiomReport,
    BialgebraObject,
    CoalgebraObject,
    comultiply,
    counit,
    is_algebra_morphism,
    is_coalgebra_morphism,
    multiply,
    unit_vector,
)
from utils import linalg

logger = get_logger(__name__)

Colax = Literal["phi", "psi"]


class DimensionLimitError(ValueError):
    """Raised when a carrier exceeds GDUAL_MAX_DIM."""
    pass


class InfiniteDimensionalError(ValueError):
    """Raised when a finite-dimensional object is required."""
    pass


def _check_dimension(obj) -> None:
    if not isinstance(obj, (AlgebraObject, CoalgebraObject, BialgebraObject)):
        raise InfiniteDimensionalError(
            f"{type(obj).__name__} is not a finite-dimensional object; use the finite dual engine"
        )
    dim = obj.carrier.total_dim
    if dim > settings.max_dim:
        raise DimensionLimitError(f"{obj.name} has dimension {dim} > GDUAL_MAX_DIM={settings.max_dim}")


def _dual_labels(obj) -> dict[Basis, str]:
    return {(group_inv(g), i): f"{obj.label((g, i))}*" for g, i in obj.carrier.basis()}


def _dual_name(name: str) -> str:
    return f"({name})^dual"


@dataclass
class DualityWitness:
    """Audit record of the structure maps used to build a dual."""

    source: str
    dual: str
    ctx: BraidedContext
    maps: dict[str, GradedLinearMap] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "dual": self.dual,
            "maps": {
                name: {
                    "source_dims": f.source.describe()["dims"],
                    "target_dims": f.target.describe()["dims"],
                    "shift": f.source.group.format_degree(f.shift),
                }
                for name, f in self.maps.items()
            },
        }

    def verify(self, carrier) -> bool:
        """Recompute the recorded maps from gvect and compare."""
        expected = {
            "phi2": phi2(carrier, carrier, self.ctx),
            "phi0": phi0(self.ctx),
            "eta": eta_map(carrier, self.ctx),
            "j": j_map(carrier, self.ctx),
            "psi2": psi2(carrier, carrier, self.ctx),
            "psi0": psi0(self.ctx),
        }
        return all(expected[name] == f for name, f in self.maps.items() if name in expected)


def dual_algebra(c: CoalgebraObject, witness: Optional[DualityWitness] = None) -> AlgebraObject:
    _check_dimension(c)
    ctx = c.ctx
    lax2 = phi2(c.carrier, c.carrier, ctx)
    lax0 = phi0(ctx)
    m = compose(dual_map(c.delta), lax2)
    u = compose(dual_map(c.eps), lax0)
    if witness is not None:
        witness.maps.update({"phi2": lax2, "phi0": lax0})
    logger.debug(f"Dual algebra of {c.name}: dims {dual_space(c.carrier).describe()['dims']}")
    return AlgebraObject(dual_space(c.carrier), m, u, ctx, _dual_name(c.name), _dual_labels(c))


def dual_coalgebra(
    a: AlgebraObject, colax: Colax = "phi", witness: Optional[DualityWitness] = None
) -> CoalgebraObject:
    _check_dimension(a)
    ctx = a.ctx
    if colax == "phi":
        comparison2, comparison0 = phi2(a.carrier, a.carrier, ctx), phi0(ctx)
    elif colax == "psi":
        comparison2, comparison0 = psi2(a.carrier, a.carrier, ctx), psi0(ctx)
    else:
        raise ValueError(f"unknown colax structure {colax!r}")
    delta = compose(inverse(comparison2), dual_map(a.m))
    eps = compose(inverse(comparison0), dual_map(a.u))
    if witness is not None:
        witness.maps.update({f"{colax}2": comparison2, f"{colax}0": comparison0})
    return CoalgebraObject(dual_space(a.carrier), delta, eps, ctx, _dual_name(a.name), _dual_labels(a))


def dual_bialgebra(
    h: BialgebraObject, colax: Colax = "phi", witness: Optional[DualityWitness] = None
) -> BialgebraObject:
    _check_dimension(h)
    algebra = dual_algebra(h.coalgebra, witness)
    coalgebra = dual_coalgebra(h.algebra, colax, witness)
    return BialgebraObject(algebra, coalgebra)


def dualize(obj, colax: Colax = "phi") -> tuple[Union[AlgebraObject, CoalgebraObject, BialgebraObject], DualityWitness]:
    """Dual of any finite-dimensional object together with its audit witness."""
    _check_dimension(obj)
    witness = DualityWitness(obj.name, _dual_name(obj.name), obj.ctx)
    if isinstance(obj, AlgebraObject):
        dual = dual_coalgebra(obj, colax, witness)
    elif isinstance(obj, CoalgebraObject):
        dual = dual_algebra(obj, witness)
    else:
        dual = dual_bialgebra(obj, colax, witness)
    witness.maps.update({"eta": eta_map(obj.carrier, obj.ctx), "j": j_map(obj.carrier, obj.ctx)})
    return dual, witness


def _intertwining_report(
    f: GradedLinearMap, source: BialgebraObject, target: BialgebraObject, subject: str
) -> AxiomReport:
    report = AxiomReport(subject, ["invertible", "m", "u", "delta", "eps"])
    if not is_invertible(f):
        report.failures.append(AxiomFailure("invertible", (), "comparison map is singular"))
    checks = {
        "m": compose(f, source.algebra.m) == compose(target.algebra.m, tensor_map(f, f)),
        "u": compose(f, source.algebra.u) == target.algebra.u,
        "delta": compose(tensor_map(f, f), source.coalgebra.delta) == compose(target.coalgebra.delta, f),
        "eps": compose(target.coalgebra.eps, f) == source.coalgebra.eps,
    }
    for law, ok in checks.items():
        if not ok:
            report.failures.append(AxiomFailure(law, (), f"eta does not intertwine {law}"))
    return report


def double_dual_comparison(h: BialgebraObject, colax: Colax = "phi") -> AxiomReport:
    """eta_H : H -> H^dual^dual as a bialgebra isomorphism."""
    double = dual_bialgebra(dual_bialgebra(h, colax), colax)
    report = _intertwining_report(eta_map(h.carrier, h.ctx), h, double, f"eta for {h.name}")
    if not report.passed:
        logger.info(f"Double dual comparison failed for {h.name}: {report.failed_laws()}")
    return report


def lifted_unit_expected(b: AlgebraObject, colax: Colax = "phi") -> bool:
    """psi lifts the unit for every alpha; phi needs alpha symmetric on the degrees of B."""
    return colax == "psi" or is_symmetric_on(b.ctx.alpha, b.carrier.degrees)


def double_dual_expected(h: BialgebraObject, colax: Colax = "phi") -> bool:
    """eta_H intertwines the double dual when the monodromy on the degrees of H
    is trivial (phi) or squares to the identity (psi)."""
    return monodromy_order_divides(h.ctx.alpha, h.carrier.degrees, 1 if colax == "phi" else 2)


def lifted_unit_check(b: AlgebraObject, colax: Colax = "phi") -> AxiomReport:
    """The unit B -> (B^dual)^dual of the lifted adjunction is an algebra map.

    For finite-dimensional B the finite dual is all of B^dual, so the
    comparison map reduces to eta_B.
    """
    target = dual_algebra(dual_coalgebra(b, colax))
    eta = eta_map(b.carrier, b.ctx)
    report = AxiomReport(f"lifted unit for {b.name} ({colax})", ["multiplicative", "unital"])
    lhs, rhs = compose(eta, b.m), compose(target.m, tensor_map(eta, eta))
    if lhs != rhs:
        for x, y in product(b.carrier.basis(), repeat=2):
            col = tensor_basis(b.carrier, b.carrier, x, y)
            if lhs.column(col) != rhs.column(col):
                report.failures.append(AxiomFailure(
                    "multiplicative", (b.label(x), b.label(y)), "eta(xy) != eta(x) eta(y)"
                ))
    if compose(eta, b.u) != target.u:
        report.failures.append(AxiomFailure("unital", ("1",), "eta(1) != 1"))
    return report


def contravariant_functoriality_check(f: GradedLinearMap, c: CoalgebraObject, d: CoalgebraObject) -> AxiomReport:
    """For a coalgebra map f: C -> D, f^dual: D^dual -> C^dual is an algebra map."""
    report = AxiomReport(f"dual of a morphism {c.name} -> {d.name}", ["coalgebra morphism", "dual algebra morphism"])
    if not is_coalgebra_morphism(f, c, d):
        report.failures.append(AxiomFailure("coalgebra morphism", (), "input is not a coalgebra morphism"))
        return report
    if not is_algebra_morphism(dual_map(f), dual_algebra(d), dual_algebra(c)):
        report.failures.append(AxiomFailure("dual algebra morphism", (), "f^dual is not multiplicative"))
    return report


# Isomorphism search


Var = tuple[Basis, Basis]
Polynomial = dict[tuple[Var, ...], object]

CANDIDATES = (1, -1, 0)
MAX_NODES = 10_000


def _poly_add(poly: Polynomial, monomial: tuple[Var, ...], coefficient) -> None:
    monomial = tuple(sorted(monomial))
    total = poly.get(monomial, 0) + coefficient
    if total:
        poly[monomial] = total
    else:
        poly.pop(monomial, None)


def _intertwiner_equations(h1: BialgebraObject, h2: BialgebraObject) -> tuple[list[Var], list[Polynomial]]:
    domain = h1.ctx.domain
    b1, b2 = h1.carrier.basis(), h2.carrier.basis()
    variables = [(t, s) for s in b1 for t in b2 if t[0] == s[0]]
    by_degree: dict = {}
    for t in b2:
        by_degree.setdefault(t[0], []).append(t)
    equations: list[Polynomial] = []

    for a, b in product(b1, repeat=2):
        lhs = multiply(h1.algebra, {a: domain.one}, {b: domain.one})
        per_target: dict = {}
        for s, c in lhs.items():
            for t in by_degree.get(s[0], []):
                _poly_add(per_target.setdefault(t, {}), ((t, s),), c)
        for p in by_degree.get(a[0], []):
            for q in by_degree.get(b[0], []):
                for t, c in multiply(h2.algebra, {p: domain.one}, {q: domain.one}).items():
                    _poly_add(per_target.setdefault(t, {}), ((p, a), (q, b)), -c)
        equations.extend(per_target.values())

    for a in b1:
        per_pair: dict = {}
        for (s1, s2), c in comultiply(h1.coalgebra, {a: domain.one}).items():
            for p in by_degree.get(s1[0], []):
                for q in by_degree.get(s2[0], []):
                    _poly_add(per_pair.setdefault((p, q), {}), ((p, s1), (q, s2)), c)
        for t in by_degree.get(a[0], []):
            for pq, c in comultiply(h2.coalgebra, {t: domain.one}).items():
                _poly_add(per_pair.setdefault(pq, {}), ((t, a),), -c)
        equations.extend(per_pair.values())

    u1, u2 = unit_vector(h1.algebra), unit_vector(h2.algebra)
    for t in b2:
        eq: Polynomial = {}
        for s, c in u1.items():
            if s[0] == t[0]:
                _poly_add(eq, ((t, s),), c)
        if u2.get(t):
            _poly_add(eq, (), -u2[t])
        equations.append(eq)
    for s in b1:
        eq = {}
        for t in by_degree.get(s[0], []):
            e2 = counit(h2.coalgebra, {t: domain.one})
            if e2:
                _poly_add(eq, ((t, s),), e2)
        e1 = counit(h1.coalgebra, {s: domain.one})
        if e1:
            _poly_add(eq, (), -e1)
        equations.append(eq)
    return variables, [eq for eq in equations if eq]


def _linearize(equations: list[Polynomial], known: dict[Var, object], unknown: list[Var], domain):
    """Rows of the equations that are linear in the unknowns after substitution."""
    index = {v: k for k, v in enumerate(unknown)}
    rows = []
    for eq in equations:
        row = [domain.zero] * (len(unknown) + 1)
        linear = True
        for monomial, c in eq.items():
            value = domain.coerce(1) * c
            free = []
            for v in monomial:
                if v in known:
                    value = value * known[v]
                else:
                    free.append(v)
            if len(free) > 1:
                linear = False
                break
            if not value:
                continue
            if free:
                row[index[free[0]]] = row[index[free[0]]] + value
            else:
                row[-1] = row[-1] - value
        if linear and any(row):
            rows.append(row)
    return rows


def solve_intertwiner(h1: BialgebraObject, h2: BialgebraObject) -> Optional[GradedLinearMap]:
    """A bialgebra isomorphism H1 -> H2 found by iterated exact linear solves, or None."""
    if h1.carrier != h2.carrier:
        return None
    domain = h1.ctx.domain
    variables, equations = _intertwiner_equations(h1, h2)
    nodes = 0

    def build(known: dict[Var, object]) -> GradedLinearMap:
        columns: dict = {}
        for (t, s), value in known.items():
            if value:
                columns.setdefault(s, {})[t] = value
        return map_from_columns(h1.carrier, h2.carrier, columns, domain)

    def search(known: dict[Var, object]) -> Optional[GradedLinearMap]:
        nonlocal nodes
        nodes += 1
        if nodes > MAX_NODES:
            return None
        known = dict(known)
        while True:
            unknown = [v for v in variables if v not in known]
            if not unknown:
                f = build(known)
                ok = is_invertible(f) and is_algebra_morphism(f, h1.algebra, h2.algebra)
                ok = ok and is_coalgebra_morphism(f, h1.coalgebra, h2.coalgebra)
                return f if ok else None
            rows = _linearize(equations, known, unknown, domain)
            reduced, pivots = linalg.rref(rows, len(unknown) + 1)
            if pivots and pivots[-1] == len(unknown):
                return None
            fixed = 0
            for row, p in zip(reduced, pivots):
                if all(not row[c] for c in range(len(unknown)) if c != p):
                    known[unknown[p]] = row[-1]
                    fixed += 1
            if fixed:
                continue
            pivot_set = set(pivots)
            choice = next(v for k, v in enumerate(unknown) if k not in pivot_set)
            for value in CANDIDATES:
                found = search({**known, choice: domain.coerce(value)})
                if found is not None:
                    return found
            return None

    result = search({})
    logger.debug(f"Intertwiner search {h1.name} -> {h2.name}: {nodes} nodes, found={result is not None}")
    return result
