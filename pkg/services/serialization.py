"""Conversion between problem-file models and domain objects."""

from dataclasses import replace
from typing import Optional, Union

from config.logger import get_logger
from services.finitedual import AlgebraPresentation, HomogeneousFunctional, functional_from_dict
from services.grading import AbelianGroup, Bicharacter, GradingError, SignatureError
from services.gvect import Basis, BraidedContext, GradedVectorSpace
from services.objects import (
    AlgebraObject,
    BialgebraObject,
    CoalgebraObject,
    algebra_from_table,
    coalgebra_from_table,
    comultiply,
    counit,
    ground_field,
    group_algebra,
    multiply,
    super_exterior,
    truncated_polynomial,
    unit_vector,
)
from services.schema import FieldSpec, ObjectSpec, ProblemFile, ProblemFileError
from utils.ncpoly import NCPolynomial, PolynomialSyntaxError, parse_polynomial
from utils.scalars import ScalarDomain, ScalarError, domain_from_config

logger = get_logger(__name__)

StructureObject = Union[AlgebraObject, CoalgebraObject, BialgebraObject]


def parse_field_flag(text: str) -> FieldSpec:
    """``Q``, ``Fp:7`` or ``QCyclo:3`` as given to ``--field``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "Q" and not arg:
            return FieldSpec(kind="Q")
        if kind == "Fp":
            return FieldSpec(kind="Fp", p=int(arg))
        if kind == "QCyclo":
            return FieldSpec(kind="QCyclo", n=int(arg))
    except ValueError as e:
        raise ProblemFileError(f"malformed field {text!r}", "--field") from e
    raise ProblemFileError(f"unknown field {text!r}, expected Q, Fp:p or QCyclo:n", "--field")


def build_domain(spec: FieldSpec) -> ScalarDomain:
    try:
        return domain_from_config(spec.model_dump())
    except ScalarError as e:
        raise ProblemFileError(str(e), "field") from e


def build_bicharacter(problem: ProblemFile, field_override: Optional[FieldSpec] = None) -> Bicharacter:
    """The declared bicharacter, not yet checked against its laws."""
    domain = build_domain(field_override or problem.field)
    try:
        group = AbelianGroup(problem.group.free_rank, tuple(problem.group.torsion))
    except GradingError as e:
        raise ProblemFileError(str(e), "group") from e
    spec = problem.bicharacter
    try:
        if spec is None or spec.kind == "trivial":
            return Bicharacter.trivial(group, domain)
        if spec.kind == "super":
            return Bicharacter.super_sign(group, domain)
        return Bicharacter(group, domain, [[domain.parse(v) for v in row] for row in spec.q])
    except (GradingError, ScalarError) as e:
        raise ProblemFileError(str(e), "bicharacter") from e


def build_context(problem: ProblemFile, field_override: Optional[FieldSpec] = None) -> BraidedContext:
    alpha = build_bicharacter(problem, field_override)
    try:
        return BraidedContext(alpha.group, alpha, alpha.domain)
    except (GradingError, SignatureError) as e:
        raise ProblemFileError(str(e), "bicharacter") from e


def _restrict(obj: BialgebraObject, kind: str, name: str) -> StructureObject:
    algebra = replace(obj.algebra, name=name)
    coalgebra = replace(obj.coalgebra, name=name)
    if kind == "algebra":
        return algebra
    if kind == "coalgebra":
        return coalgebra
    return BialgebraObject(algebra, coalgebra)


def _from_builder(spec: ObjectSpec, ctx: BraidedContext) -> StructureObject:
    args = spec.args
    if spec.builder == "ground_field":
        return _restrict(ground_field(ctx), spec.kind, spec.name)
    if spec.builder == "group_algebra":
        built = group_algebra(ctx, args.get("torsion", ctx.group.torsion), bool(args.get("self_graded", False)))
        return _restrict(built, spec.kind, spec.name)
    if spec.builder == "super_exterior":
        return _restrict(super_exterior(ctx), spec.kind, spec.name)
    if spec.kind != "algebra":
        raise ProblemFileError("truncated_polynomial only builds algebras", f"objects.{spec.name}.kind")
    degree = ctx.group.parse_degree(str(args.get("degree", "")))
    return replace(truncated_polynomial(ctx, degree, int(args.get("n", 2))), name=spec.name)


def _from_tables(spec: ObjectSpec, ctx: BraidedContext) -> StructureObject:
    domain = ctx.domain
    counts: dict = {}
    index: dict[str, Basis] = {}
    for entry in spec.basis:
        g = ctx.group.parse_degree(entry.degree)
        index[entry.label] = (g, counts.get(g, 0))
        counts[g] = counts.get(g, 0) + 1
    carrier = GradedVectorSpace(ctx.group, tuple(counts.items()))
    labels = {b: label for label, b in index.items()}

    def basis_of(label: str, where: str) -> Basis:
        if label not in index:
            raise ProblemFileError(f"unknown basis label {label!r}", f"objects.{spec.name}.{where}")
        return index[label]

    def vector(values: dict, where: str) -> dict:
        return {basis_of(k, where): domain.parse(v) for k, v in values.items()}

    algebra = coalgebra = None
    if spec.kind in ("algebra", "bialgebra"):
        table = {
            (basis_of(t.left, "product"), basis_of(t.right, "product")): vector(t.result, "product")
            for t in spec.product
        }
        algebra = algebra_from_table(ctx, carrier, table, vector(spec.unit, "unit"), spec.name, labels)
    if spec.kind in ("coalgebra", "bialgebra"):
        table = {}
        for label, terms in spec.coproduct.items():
            image = table.setdefault(basis_of(label, "coproduct"), {})
            for t in terms:
                key = (basis_of(t.left, "coproduct"), basis_of(t.right, "coproduct"))
                image[key] = image.get(key, domain.zero) + domain.parse(t.coefficient)
        coalgebra = coalgebra_from_table(ctx, carrier, table, vector(spec.counit, "counit"), spec.name, labels)
    if algebra is not None and coalgebra is not None:
        return BialgebraObject(algebra, coalgebra)
    return algebra if algebra is not None else coalgebra


def build_object(spec: ObjectSpec, ctx: BraidedContext) -> StructureObject:
    try:
        if spec.builder is not None:
            return _from_builder(spec, ctx)
        return _from_tables(spec, ctx)
    except ProblemFileError:
        raise
    except (GradingError, SignatureError, ScalarError, ValueError) as e:
        raise ProblemFileError(str(e), f"objects.{spec.name}") from e


def object_kind(obj: StructureObject) -> str:
    if isinstance(obj, BialgebraObject):
        return "bialgebra"
    return "algebra" if isinstance(obj, AlgebraObject) else "coalgebra"


def object_to_dict(obj: StructureObject) -> dict:
    """Table form of an object; it parses back through ``ObjectSpec``."""
    ctx = obj.ctx
    domain = ctx.domain
    basis = obj.carrier.basis()
    one = domain.one
    kind = object_kind(obj)
    out: dict = {
        "name": obj.name,
        "kind": kind,
        "basis": [{"label": obj.label(b), "degree": ctx.group.format_degree(b[0])} for b in basis],
    }
    algebra = obj.algebra if isinstance(obj, BialgebraObject) else obj
    coalgebra = obj.coalgebra if isinstance(obj, BialgebraObject) else obj
    if kind in ("algebra", "bialgebra"):
        out["product"] = []
        for x in basis:
            for y in basis:
                image = multiply(algebra, {x: one}, {y: one})
                if image:
                    out["product"].append({
                        "left": obj.label(x),
                        "right": obj.label(y),
                        "result": {obj.label(b): domain.format(c) for b, c in sorted(image.items())},
                    })
        out["unit"] = {obj.label(b): domain.format(c) for b, c in sorted(unit_vector(algebra).items())}
    if kind in ("coalgebra", "bialgebra"):
        out["coproduct"] = {}
        for x in basis:
            image = comultiply(coalgebra, {x: one})
            if image:
                out["coproduct"][obj.label(x)] = [
                    {"left": obj.label(l), "right": obj.label(r), "coefficient": domain.format(c)}
                    for (l, r), c in sorted(image.items())
                ]
        out["counit"] = {
            obj.label(x): domain.format(counit(coalgebra, {x: one}))
            for x in basis if counit(coalgebra, {x: one})
        }
    return out


def build_presentation(problem: ProblemFile, ctx: BraidedContext) -> AlgebraPresentation:
    if problem.presentation is None:
        raise ProblemFileError("this command needs a presentation", "presentation")
    try:
        return AlgebraPresentation.from_dict(problem.presentation.model_dump(), ctx)
    except (GradingError, PolynomialSyntaxError, ScalarError) as e:
        raise ProblemFileError(str(e), "presentation") from e


def build_functionals(problem: ProblemFile, presentation: AlgebraPresentation) -> list[HomogeneousFunctional]:
    out = []
    for k, spec in enumerate(problem.functionals):
        data = spec.model_dump(exclude_defaults=True)
        data.setdefault("kind", spec.kind)
        try:
            out.append(functional_from_dict(data, presentation))
        except (KeyError, ValueError) as e:
            raise ProblemFileError(str(e), f"functionals.{k}") from e
    return out


def build_ideals(problem: ProblemFile, presentation: AlgebraPresentation) -> list[list[NCPolynomial]]:
    domain = presentation.ctx.domain
    family = []
    for k, generators in enumerate(problem.ideals):
        try:
            family.append([parse_polynomial(text, presentation.names, domain) for text in generators])
        except (PolynomialSyntaxError, ScalarError) as e:
            raise ProblemFileError(str(e), f"ideals.{k}") from e
    return family
