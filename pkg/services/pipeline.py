"""One staged pipeline per command, each producing a Report."""

from dataclasses import dataclass
from typing import Callable, Optional

from config.logger import get_logger
from config.settings import settings
from services.check_runner import CheckRunner
from services.dualization import (
    double_dual_comparison,
    double_dual_expected,
    dualize,
    lifted_unit_check,
    lifted_unit_expected,
    solve_intertwiner,
)
from services.finitedual import (
    AlgebraPresentation,
    FiniteDualResult,
    GoodSubspace,
    HomogeneousFunctional,
    InconsistentCoproductError,
    MembershipResult,
    TruncationError,
    check_good_subspace,
    enumerate_power_ideals,
    finite_truncation,
    im_p_I_dual,
    membership,
    sum_of_good,
)
from services.grading import Bicharacter, bicharacter_validate, is_symmetric_on, symmetry_check
from services.gvect import (
    BraidedContext,
    compose,
    curry,
    dual_map,
    dual_space,
    eta_map,
    identity_map,
    j_map,
    monodromy,
    phi0,
    phi2,
    psi0,
    psi2,
    random_map,
    random_space,
    tensor_space,
    uncurry,
    unit_space,
)
from services.objects import (
    AlgebraObject,
    BialgebraObject,
    check_object,
    group_algebra,
    ground_field,
    super_exterior,
)
from services.report import Check, CheckStatus, Report, input_digest
from services.schema import FieldSpec, ProblemFile, ProblemFileError, load_problem
from services.serialization import (
    build_bicharacter,
    build_context,
    build_functionals,
    build_ideals,
    build_object,
    build_presentation,
    object_kind,
    object_to_dict,
)
from services.tambara import (
    TambaraResult,
    WindowError,
    induced_law_check,
    pi_n_check,
    rewriting_normal_forms,
    tambara_left_adjoint,
    truncation_coherence_check,
)
from utils.ncpoly import NCPolynomial
from utils.rng import CounterRng

logger = get_logger(__name__)


@dataclass
class CommandOptions:
    """Per-invocation overrides from the command line."""
    field: Optional[FieldSpec] = None
    seed: Optional[int] = None
    truncate: Optional[int] = None
    window: Optional[int] = None
    codim_bound: Optional[int] = None
    cases: Optional[int] = None
    s_path: Optional[str] = None
    b_path: Optional[str] = None


def _first(*values):
    return next((v for v in values if v is not None), None)


def _report(command: str, raw: bytes, options: CommandOptions) -> Report:
    return Report(command, input_digest(raw), _first(options.seed, settings.seed))


def _runner() -> CheckRunner:
    runner = CheckRunner()
    runner.add_progress_callback(lambda p: logger.debug(f"[{p.progress}%] {p.message}"))
    return runner


def _progress(progress_callback: Optional[Callable]):
    async def update_progress(progress: int, message: str):
        """Helper to update progress if callback provided."""
        logger.info(message)
        if progress_callback:
            await progress_callback(progress, message)
    return update_progress


# validate


def _bicharacter_check(alpha: Bicharacter) -> Check:
    report = bicharacter_validate(alpha)
    if not report.valid:
        return Check.failed("bicharacter laws", "; ".join(report.failures), report.failures)
    braided = "symmetric" if symmetry_check(alpha) else "braided, not symmetric"
    return Check.passed("bicharacter laws", f"nonzero and torsion-consistent; {braided}")


def _object_check(obj) -> Check:
    return Check.from_axioms(f"{object_kind(obj)} axioms: {obj.name}", check_object(obj))


def _presentation_check(presentation: AlgebraPresentation, truncate: int) -> Check:
    name = f"presentation: {presentation.name}"
    try:
        truncation = presentation.truncate(truncate)
    except TruncationError as e:
        return Check(name, CheckStatus.INCONCLUSIVE, f"truncation insufficient: {e}")
    return Check.passed(name, f"homogeneous relations; per-length dims {truncation.per_length_dims}")


async def validate_pipeline(
    problem: ProblemFile, raw: bytes, options: CommandOptions, progress_callback: Optional[Callable] = None
) -> Report:
    update_progress = _progress(progress_callback)
    report = _report("validate", raw, options)

    # Step 1: Validate the grading data
    await update_progress(10, "Validating grading data...")
    alpha = build_bicharacter(problem, options.field)
    if problem.bicharacter is not None:
        report.checks.append(_bicharacter_check(alpha))
        if report.failed:
            return report
    ctx = build_context(problem, options.field)

    # Step 2: Build objects and presentation
    await update_progress(30, f"Building {len(problem.objects)} objects...")
    objects = [build_object(spec, ctx) for spec in problem.objects]
    presentation = build_presentation(problem, ctx) if problem.presentation else None

    # Step 3: Run checks
    runner = _runner()
    for obj in objects:
        runner.add(obj.name, _object_check, obj)
    if presentation is not None:
        truncate = _first(options.truncate, problem.parameters.truncate, settings.truncate)
        runner.add(presentation.name, _presentation_check, presentation, truncate)
    report.checks += await runner.run()
    report.artifacts = {"context": {
        "field": ctx.domain.describe(),
        "group": ctx.group.describe(),
        "symmetric": symmetry_check(ctx.alpha),
    }}
    await update_progress(100, "Validation complete")
    return report


# dualize


def _double_dual(h: BialgebraObject, colax: str) -> Check:
    name = f"double dual comparison: {h.name}"
    if not double_dual_expected(h, colax):
        reason = "alpha is not symmetric" if colax == "phi" else "the monodromy does not square to 1"
        return Check(name, CheckStatus.INCONCLUSIVE, f"{reason} on the support")
    return Check.from_axioms(name, double_dual_comparison(h, colax))


def _dual_checks(obj, colax: str, built: dict) -> list[Check]:
    dual, witness = dualize(obj, colax)
    built[obj.name] = (dual, witness)
    checks = [
        Check.from_axioms(f"dual axioms: {dual.name}", check_object(dual)),
        Check.passed(f"duality witness: {obj.name}", "structure maps recomputed")
        if witness.verify(obj.carrier)
        else Check.failed(f"duality witness: {obj.name}", "recorded structure maps differ from recomputation"),
    ]
    if isinstance(obj, AlgebraObject):
        name = f"lifted unit: {obj.name}"
        if lifted_unit_expected(obj, colax):
            checks.append(Check.from_axioms(name, lifted_unit_check(obj, colax)))
        else:
            checks.append(Check(name, CheckStatus.INCONCLUSIVE, "alpha is not symmetric on the support; use colax psi"))
    if isinstance(obj, BialgebraObject):
        checks.append(_double_dual(obj, colax))
        iso = solve_intertwiner(obj, dual)
        name = f"isomorphic to source: {dual.name}"
        if iso is None:
            checks.append(Check(name, CheckStatus.INCONCLUSIVE, "no intertwiner found"))
        else:
            checks.append(Check.passed(name, "explicit bialgebra isomorphism", iso.describe()))
    return checks


async def dualize_pipeline(
    problem: ProblemFile, raw: bytes, options: CommandOptions, progress_callback: Optional[Callable] = None
) -> Report:
    update_progress = _progress(progress_callback)
    report = _report("dualize", raw, options)
    colax = problem.parameters.colax

    # Step 1: Build objects
    await update_progress(10, "Building objects...")
    ctx = build_context(problem, options.field)
    objects = [build_object(spec, ctx) for spec in problem.objects]

    # Step 2: Dualize and check
    await update_progress(30, f"Dualizing {len(objects)} objects ({colax})...")
    built: dict = {}
    runner = _runner()
    for obj in objects:
        runner.add(obj.name, _dual_checks, obj, colax, built)
    report.checks = await runner.run()

    # Step 3: Serialize duals
    duals, witnesses = {}, {}
    for obj in objects:
        dual, witness = built[obj.name]
        duals[obj.name] = object_to_dict(dual)
        witnesses[obj.name] = witness.to_dict()
    report.artifacts = {"duals": duals, "witnesses": witnesses}
    await update_progress(100, "Dualization complete")
    return report


# finite-dual


def _membership_check(f: HomogeneousFunctional, presentation: AlgebraPresentation, truncate: int,
                      window: Optional[int], results: dict) -> Check:
    name = f"membership: {f.name}"
    try:
        result = membership(f, presentation, truncate, window)
    except TruncationError as e:
        return Check(name, CheckStatus.INCONCLUSIVE, f"truncation insufficient: {e}")
    results[f.name] = result
    if result.member:
        return Check.passed(name, f"member, kernel ideal of codimension {result.codim}", result.to_dict(presentation))
    codims = [c for _, c in result.trace]
    return Check(name, CheckStatus.INCONCLUSIVE, f"{result.status}, codimension trace {codims}",
                 result.to_dict(presentation))


def _good_check(presentation: AlgebraPresentation, ideal: list[NCPolynomial], truncate: int,
                index: int, goods: dict) -> Check:
    name = f"good subspace: {presentation.name}/{presentation.format_ideal(ideal)}"
    try:
        good = im_p_I_dual(presentation, ideal, truncate)
    except TruncationError as e:
        return Check(name, CheckStatus.INCONCLUSIVE, f"truncation insufficient: {e}")
    goods[index] = good
    check = Check.from_axioms(name, check_good_subspace(good, truncate))
    if check.status is CheckStatus.PASS:
        check.detail = f"dim {good.dim}; {check.detail}"
    return check


def _full_dual_check(presentation: AlgebraPresentation, merged: GoodSubspace, truncate: int) -> Optional[Check]:
    try:
        truncation = finite_truncation(presentation, truncate)
    except TruncationError:
        return None
    dim = len(truncation.normal_words())
    name = f"finite dual is the full dual: {presentation.name}"
    if merged.dim == dim:
        return Check.passed(name, f"dim {dim}")
    return Check.failed(name, f"finite dual has dim {merged.dim}, full dual has dim {dim}")


async def finite_dual_pipeline(
    problem: ProblemFile, raw: bytes, options: CommandOptions, progress_callback: Optional[Callable] = None
) -> Report:
    update_progress = _progress(progress_callback)
    report = _report("finite-dual", raw, options)
    params = problem.parameters
    truncate = _first(options.truncate, params.truncate, settings.truncate)
    window = _first(options.window, params.window, settings.window)
    codim_bound = _first(options.codim_bound, params.codim_bound, settings.codim_bound)

    # Step 1: Parse presentation, functionals and ideals
    await update_progress(5, "Parsing presentation...")
    ctx = build_context(problem, options.field)
    presentation = build_presentation(problem, ctx)
    functionals = build_functionals(problem, presentation)
    family = build_ideals(problem, presentation)
    if params.enumerate_ideals:
        family += enumerate_power_ideals(presentation, codim_bound, truncate)
    if not family and not functionals:
        family.append([])

    # Step 2: Membership of the functionals
    await update_progress(20, f"Deciding membership of {len(functionals)} functionals up to N={truncate}...")
    results: dict[str, MembershipResult] = {}
    runner = _runner()
    for f in functionals:
        runner.add(f.name, _membership_check, f, presentation, truncate, window, results)
    report.checks = await runner.run()
    memberships = [results[f.name] for f in functionals if f.name in results]
    for m in memberships:
        if m.witness is not None:
            family.append(m.witness.generators(ctx.domain))

    # Step 3: Good subspaces per ideal
    await update_progress(50, f"Building {len(family)} good subspaces...")
    goods: dict[int, GoodSubspace] = {}
    runner = _runner()
    for k, ideal in enumerate(family):
        runner.add(f"ideal {k}", _good_check, presentation, ideal, truncate, k, goods)
    report.checks += await runner.run()

    # Step 4: Merge
    await update_progress(80, "Merging good subspaces...")
    ordered = [goods[k] for k in sorted(goods)]
    report.artifacts = {"presentation": presentation.to_dict(), "members": [m.to_dict(presentation) for m in memberships]}
    if not ordered:
        report.checks.append(Check(f"finite dual: {presentation.name}", CheckStatus.INCONCLUSIVE,
                                   "no good subspace fits the truncation"))
        return report
    try:
        merged = sum_of_good(ordered, truncate)
    except InconsistentCoproductError as e:
        logger.error(f"Finite dual of {presentation.name} failed: {e}")
        report.checks.append(Check.failed(f"finite dual: {presentation.name}", str(e)))
        return report
    result = FiniteDualResult(presentation, [family[k] for k in sorted(goods)], ordered, merged, memberships,
                              check_good_subspace(merged, truncate))
    report.checks.append(Check.from_axioms(f"finite dual: {presentation.name}", result.report))
    if [] in family:
        full = _full_dual_check(presentation, merged, truncate)
        if full is not None:
            report.checks.append(full)
    report.artifacts = result.to_dict()
    report.artifacts["coalgebra"] = object_to_dict(result.coalgebra)
    await update_progress(100, f"Finite dual has dimension {merged.dim} within N={truncate}")
    return report


# tambara


def _algebra_from(problem: ProblemFile, path: Optional[str], name: Optional[str], ctx: BraidedContext) -> AlgebraObject:
    if path is not None:
        source, _ = load_problem(path)
        if not source.objects:
            raise ProblemFileError("no objects", path)
        spec = source.objects[0]
    elif name is not None:
        spec = problem.object_named(name)
    elif problem.objects:
        spec = problem.objects[0]
    else:
        raise ProblemFileError("tambara needs an algebra S and an algebra B", "objects")
    obj = build_object(spec, ctx)
    if isinstance(obj, BialgebraObject):
        return obj.algebra
    if not isinstance(obj, AlgebraObject):
        raise ProblemFileError(f"{spec.name} is not an algebra", f"objects.{spec.name}.kind")
    return obj


def _tambara_summary(result: TambaraResult) -> Check:
    quotient = result.quotient
    rewriting = rewriting_normal_forms(len(quotient.names), quotient.reduced_relations, quotient.window)
    detail = (f"per-length dims {result.per_length_dims}; {result.multiplicativity_relations} multiplicativity "
              f"and {result.unit_relations} unit relations")
    return Check.passed(f"lifted left adjoint: {result.b.name} over {result.s.name}", detail,
                        {"per_length_dims": result.per_length_dims, "rewriting_dims": rewriting})


def _pi_check(result: TambaraResult, n: int) -> Check:
    return Check.from_axioms(f"pi_{n}", pi_n_check(result, n))


async def tambara_pipeline(
    problem: ProblemFile, raw: bytes, options: CommandOptions, progress_callback: Optional[Callable] = None
) -> Report:
    update_progress = _progress(progress_callback)
    report = _report("tambara", raw, options)
    params = problem.parameters
    window = _first(options.truncate, params.truncate, settings.truncate)

    # Step 1: Load S and B
    await update_progress(5, "Loading S and B...")
    ctx = build_context(problem, options.field)
    s = _algebra_from(problem, options.s_path, params.s, ctx)
    if options.b_path is None and params.b is None:
        b = s
    else:
        b = _algebra_from(problem, options.b_path, params.b, ctx)

    # Step 2: Coequalizer construction
    await update_progress(20, f"Building the lifted left adjoint within window {window}...")
    try:
        result = tambara_left_adjoint(s, b, window)
    except WindowError as e:
        raise ProblemFileError(str(e), "--truncate") from e

    # Step 3: Checks
    await update_progress(60, "Checking induced laws...")
    runner = _runner()
    runner.add("summary", _tambara_summary, result)
    runner.add("induced law", lambda: Check.from_axioms("induced algebra law", induced_law_check(result)))
    if window > 3:
        runner.add("coherence", lambda: Check.from_axioms(
            f"truncation coherence {window - 1} <= {window}",
            truncation_coherence_check(s, b, window - 1, window),
        ))
    for n in range(1, min(params.pi_n, window) + 1):
        runner.add(f"pi_{n}", _pi_check, result, n)
    report.checks = await runner.run()
    report.artifacts = result.to_dict()
    report.artifacts["normal_words"] = [
        result.quotient.format_element({w: ctx.domain.one}) for w in result.quotient.normal_words()
    ]
    await update_progress(100, "Tambara construction complete")
    return report


# adjunction-check


@dataclass
class AdjunctionCase:
    index: int
    x: object
    y: object
    rng: CounterRng

    def witness(self) -> dict:
        return {"case": self.index, "X": self.x.describe()["dims"], "Y": self.y.describe()["dims"]}


def _for_all(name: str, cases: list[AdjunctionCase], law: Callable[[AdjunctionCase], bool]) -> Check:
    for case in cases:
        if not law(case):
            return Check.failed(name, f"counterexample at case {case.index}", case.witness())
    return Check.passed(name, f"{len(cases)} cases")


def _triangle(case: AdjunctionCase, ctx: BraidedContext) -> bool:
    xd = dual_space(case.x)
    return compose(dual_map(eta_map(case.x, ctx)), j_map(xd, ctx)) == identity_map(xd, ctx.domain)


def _triangle_mirror(case: AdjunctionCase, ctx: BraidedContext) -> bool:
    xd = dual_space(case.x)
    return compose(dual_map(j_map(case.x, ctx)), eta_map(xd, ctx)) == identity_map(xd, ctx.domain)


def _eta_natural(case: AdjunctionCase, ctx: BraidedContext) -> bool:
    f = random_map(case.x, case.y, ctx, case.rng.fork("natural"))
    return compose(dual_map(dual_map(f)), eta_map(case.x, ctx)) == compose(eta_map(case.y, ctx), f)


def _colax_from_lax(case: AdjunctionCase, ctx: BraidedContext) -> bool:
    expected = compose(phi2(case.x, case.y, ctx), monodromy(dual_space(case.x), dual_space(case.y), ctx))
    return psi2(case.x, case.y, ctx) == expected and psi0(ctx) == phi0(ctx)


def _curry_round_trip(case: AdjunctionCase, ctx: BraidedContext) -> bool:
    rng = case.rng.fork("curry")
    t = random_map(tensor_space(case.y, case.x), unit_space(ctx.group), ctx, rng)
    u = random_map(case.y, dual_space(case.x), ctx, rng)
    return (
        uncurry(curry(t, case.y, case.x, ctx), case.x, ctx) == t
        and curry(uncurry(u, case.x, ctx), case.y, case.x, ctx) == u
    )


def _symmetric_colax(cases: list[AdjunctionCase], ctx: BraidedContext) -> Check:
    name = "psi2 = phi2 where alpha is symmetric"
    symmetric = [c for c in cases if is_symmetric_on(ctx.alpha, dual_space(c.x).degrees + dual_space(c.y).degrees)]
    if not symmetric:
        return Check(name, CheckStatus.INCONCLUSIVE, "no case with symmetric support")
    check = _for_all(name, symmetric, lambda c: psi2(c.x, c.y, ctx) == phi2(c.x, c.y, ctx))
    if check.status is CheckStatus.PASS:
        check.detail = f"{len(symmetric)} of {len(cases)} cases have symmetric support"
    return check


def _built_examples(ctx: BraidedContext, problem_objects: list) -> list[BialgebraObject]:
    examples = [ground_field(ctx), group_algebra(ctx, (2,))]
    if ctx.group.torsion and ctx.group.torsion[-1] % 2 == 0:
        examples.append(super_exterior(ctx))
    return examples + [o for o in problem_objects if isinstance(o, BialgebraObject)]


async def adjunction_check_pipeline(
    problem: ProblemFile, raw: bytes, options: CommandOptions, progress_callback: Optional[Callable] = None
) -> Report:
    update_progress = _progress(progress_callback)
    report = _report("adjunction-check", raw, options)
    params = problem.parameters
    n_cases = _first(options.cases, params.cases)

    # Step 1: Draw random spaces
    await update_progress(5, f"Drawing {n_cases} random cases with seed {report.seed}...")
    ctx = build_context(problem, options.field)
    root = CounterRng(report.seed, "adjunction")
    cases = []
    for i in range(n_cases):
        rng = root.fork(str(i))
        x = random_space(ctx, rng, params.max_dim)
        y = random_space(ctx, rng, params.max_dim)
        cases.append(AdjunctionCase(i, x, y, rng))

    # Step 2: Identities over all cases
    await update_progress(20, "Checking triangle identities and colax structure...")
    runner = _runner()
    runner.add("triangle", _for_all, "triangle identity (eta_X)^dual o j_(X^dual) = 1", cases,
               lambda c: _triangle(c, ctx))
    runner.add("mirror", _for_all, "triangle identity (j_X)^dual o eta_(X^dual) = 1", cases,
               lambda c: _triangle_mirror(c, ctx))
    runner.add("natural", _for_all, "naturality of eta", cases, lambda c: _eta_natural(c, ctx))
    runner.add("colax", _for_all, "colax from lax: psi2 = phi2 o monodromy, psi0 = phi0", cases,
               lambda c: _colax_from_lax(c, ctx))
    runner.add("symmetric colax", _symmetric_colax, cases, ctx)
    runner.add("curry", _for_all, "curry/uncurry bijection", cases, lambda c: _curry_round_trip(c, ctx))

    # Step 3: Double dual on built examples
    objects = [build_object(spec, ctx) for spec in problem.objects]
    for h in _built_examples(ctx, objects):
        runner.add(h.name, _double_dual, h, params.colax)
    report.checks = await runner.run()
    report.artifacts = {"cases": n_cases, "max_dim": params.max_dim}
    await update_progress(100, "Adjunction checks complete")
    return report


PIPELINES = {
    "validate": validate_pipeline,
    "dualize": dualize_pipeline,
    "finite-dual": finite_dual_pipeline,
    "tambara": tambara_pipeline,
    "adjunction-check": adjunction_check_pipeline,
}
