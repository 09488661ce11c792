"""Tests for problem file parsing and model conversion."""

import json
from pathlib import Path

import pytest

from config.directories import PROBLEMS_DIR
from mocks.problems import (
    ADJUNCTION_CYCLOTOMIC,
    DUAL_NUMBERS_TABLE,
    GEOMETRIC_FAMILY,
    POLYNOMIAL_TRIVIAL,
    PROBLEMS,
    SUPER_EXTERIOR,
)
from scripts.generate_problems import write_problems
from services.grading import symmetry_check
from services.objects import BialgebraObject, check_object
from services.schema import ObjectSpec, ProblemFileError, load_problem, parse_problem
from services.serialization import (
    build_context,
    build_domain,
    build_functionals,
    build_ideals,
    build_object,
    build_presentation,
    object_to_dict,
    parse_field_flag,
)


def raw(data: dict) -> bytes:
    return json.dumps(data).encode()


@pytest.mark.parametrize("name", sorted(PROBLEMS))
def test_bundled_problems_parse(name):
    problem = parse_problem(raw(PROBLEMS[name]), name)
    assert problem.schema_version == "gdual/1"


@pytest.mark.parametrize(
    "data, location",
    [
        ({"schema": "gdual/2"}, "schema"),
        ({"schema": "gdual/1", "colour": "red"}, "colour"),
        ({"schema": "gdual/1", "bicharacter": {"kind": "matrix"}}, "bicharacter"),
        ({"schema": "gdual/1", "parameters": {"truncate": -1}}, "parameters.truncate"),
        ({"schema": "gdual/1", "objects": [{"name": "A", "kind": "algebra"}]}, "objects.0"),
    ],
)
def test_invalid_problems(data, location):
    with pytest.raises(ProblemFileError) as e:
        parse_problem(raw(data), "p.json")
    assert e.value.location.startswith(f"p.json:{location}")


def test_duplicate_object_names():
    obj = {"name": "k", "kind": "bialgebra", "builder": "ground_field"}
    with pytest.raises(ProblemFileError, match="unique"):
        parse_problem(raw({"schema": "gdual/1", "objects": [obj, obj]}))


def test_unreadable_input(tmp_path):
    with pytest.raises(ProblemFileError, match="invalid JSON"):
        parse_problem(b"{not json")
    with pytest.raises(ProblemFileError, match="cannot read file"):
        load_problem(tmp_path / "missing.json")


def test_load_problem_returns_raw_bytes(problem_file):
    problem, data = load_problem(problem_file("super_exterior"))
    assert json.loads(data) == SUPER_EXTERIOR
    assert problem.object_named("Lambda").builder == "super_exterior"
    with pytest.raises(ProblemFileError):
        problem.object_named("missing")


def test_field_flag():
    assert parse_field_flag("Q").kind == "Q"
    assert parse_field_flag("Fp:7").p == 7
    assert parse_field_flag("QCyclo:3").n == 3
    for bad in ("R", "Fp:x", "Q:2"):
        with pytest.raises(ProblemFileError):
            parse_field_flag(bad)
    with pytest.raises(ProblemFileError):
        build_domain(parse_field_flag("Fp:9"))


def test_context_and_builder_objects():
    problem = parse_problem(raw(SUPER_EXTERIOR))
    ctx = build_context(problem)
    assert symmetry_check(ctx.alpha)
    obj = build_object(problem.objects[0], ctx)
    assert isinstance(obj, BialgebraObject)
    assert check_object(obj).passed


def test_cyclotomic_bicharacter():
    problem = parse_problem(raw(ADJUNCTION_CYCLOTOMIC))
    ctx = build_context(problem)
    z = ctx.alpha.q[0][0]
    assert z ** 3 == ctx.domain.one
    assert not symmetry_check(ctx.alpha)


def test_table_object_survives_serialization():
    problem = parse_problem(raw(DUAL_NUMBERS_TABLE))
    ctx = build_context(problem)
    obj = build_object(problem.objects[0], ctx)
    data = object_to_dict(obj)
    assert data["unit"] == {"1": "1"}
    assert len(data["product"]) == 3
    rebuilt = build_object(ObjectSpec.model_validate(data), ctx)
    assert object_to_dict(rebuilt) == data


def test_unknown_label_in_table():
    spec = dict(DUAL_NUMBERS_TABLE["objects"][0])
    spec["product"] = [{"left": "1", "right": "Y", "result": {"1": 1}}]
    problem = parse_problem(raw({"schema": "gdual/1", "objects": [spec]}))
    with pytest.raises(ProblemFileError) as e:
        build_object(problem.objects[0], build_context(problem))
    assert e.value.location == "objects.D.product"


def test_truncated_polynomial_is_only_an_algebra():
    obj = {"name": "P", "kind": "coalgebra", "builder": "truncated_polynomial", "args": {"n": 3}}
    problem = parse_problem(raw({"schema": "gdual/1", "objects": [obj]}))
    with pytest.raises(ProblemFileError):
        build_object(problem.objects[0], build_context(problem))


def test_presentation_functionals_and_ideals():
    problem = parse_problem(raw(POLYNOMIAL_TRIVIAL))
    ctx = build_context(problem)
    presentation = build_presentation(problem, ctx)
    functionals = build_functionals(problem, presentation)
    assert [f.kind for f in functionals] == ["geometric", "polynomial", "factorial"]
    assert functionals[0]((0, 0)) == 4
    family = build_ideals(parse_problem(raw(GEOMETRIC_FAMILY)), presentation)
    assert [len(gens) for gens in family] == [1, 1, 1, 1]
    with pytest.raises(ProblemFileError):
        build_presentation(parse_problem(raw({"schema": "gdual/1"})), ctx)


def test_bad_ideal_generator():
    data = dict(GEOMETRIC_FAMILY, ideals=[["X +"]])
    problem = parse_problem(raw(data))
    presentation = build_presentation(problem, build_context(problem))
    with pytest.raises(ProblemFileError) as e:
        build_ideals(problem, presentation)
    assert e.value.location == "ideals.0"


def test_bundled_files_match_mocks(tmp_path):
    root = Path(__file__).resolve().parent.parent
    for name, problem in PROBLEMS.items():
        assert json.loads((root / PROBLEMS_DIR / f"{name}.json").read_text()) == problem, name
    written = write_problems(tmp_path)
    assert len(written) == len(PROBLEMS)
    assert json.loads((tmp_path / "finite_quotient.json").read_text()) == PROBLEMS["finite_quotient"]
