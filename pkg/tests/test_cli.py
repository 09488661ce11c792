"""End-to-end tests of the gdual command line."""

import json

import pytest

from mocks.problems import PROBLEMS
from services.cli import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, run


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def statuses(report: dict) -> dict:
    return {c["name"]: c["status"] for c in report["checks"]}


def test_validate_super_exterior(capsys, problem_file):
    code, report = run_json(capsys, ["validate", problem_file("super_exterior")])
    assert code == EXIT_OK
    assert report["command"] == "validate"
    assert report["input_digest"].startswith("sha256:")
    assert statuses(report) == {"bicharacter laws": "pass", "bialgebra axioms: Lambda": "pass"}
    assert report["artifacts"]["context"]["symmetric"] is True


@pytest.mark.parametrize("name", ["exterior_trivial", "not_associative_table"])
def test_validate_reports_failed_axioms(capsys, problem_file, name):
    code, report = run_json(capsys, ["validate", problem_file(name)])
    assert code == EXIT_CHECK_FAILED
    assert "fail" in statuses(report).values()


def test_validate_empty_problem(capsys, problem_file):
    code, report = run_json(capsys, ["validate", problem_file("empty")])
    assert code == EXIT_OK
    assert report["checks"] == []


def test_input_errors(capsys, problem_file, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "gdual/9"}))
    assert run(["validate", str(bad)]) == EXIT_INPUT_ERROR
    assert run(["validate", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR
    path = problem_file("super_exterior")
    assert run(["validate", path, "--field", "Fp:9"]) == EXIT_INPUT_ERROR
    assert run(["validate", path, "--field", "bogus"]) == EXIT_INPUT_ERROR
    assert "input error" in capsys.readouterr().err


def test_bad_flags_exit_with_input_error(problem_file):
    with pytest.raises(SystemExit) as e:
        run(["finite-dual", problem_file("polynomial_trivial"), "--truncate", "-1"])
    assert e.value.code == EXIT_INPUT_ERROR


def test_dualize_group_algebra(capsys, problem_file):
    code, report = run_json(capsys, ["dualize", problem_file("group_algebra_z2")])
    assert code == EXIT_OK
    checks = statuses(report)
    assert checks["dual axioms: (kZ2)^dual"] == "pass"
    assert checks["double dual comparison: kZ2"] == "pass"
    assert "kZ2" in report["artifacts"]["duals"]


def test_dualize_over_another_field(capsys, problem_file):
    code, report = run_json(capsys, ["dualize", problem_file("super_exterior"), "--field", "Fp:7"])
    assert code == EXIT_OK
    assert statuses(report)["isomorphic to source: (Lambda)^dual"] == "pass"


def test_finite_dual_of_finite_quotient(capsys, problem_file):
    code, report = run_json(capsys, ["finite-dual", problem_file("finite_quotient")])
    assert code == EXIT_OK
    assert report["artifacts"]["finite_dual"]["dim"] == 3


def test_finite_dual_memberships(capsys, problem_file):
    _, report = run_json(capsys, ["finite-dual", problem_file("polynomial_trivial"), "--truncate", "6"])
    checks = statuses(report)
    assert checks["membership: geometric 2"] == "pass"
    assert checks["membership: n"] == "pass"
    assert checks["membership: n!"] == "inconclusive"
    members = {m["functional"]: m["status"] for m in report["artifacts"]["members"]}
    assert members["n!"] == "not-member-up-to-6"


def test_finite_dual_of_geometric_family(capsys, problem_file):
    code, report = run_json(capsys, ["finite-dual", problem_file("geometric_family")])
    assert code == EXIT_OK
    assert report["artifacts"]["family"] == ["(X)", "(X - 1)", "(X - 2)", "(X*X)"]
    assert report["artifacts"]["finite_dual"]["dim"] == 4
    assert statuses(report)["good subspace: k[X]/(X - 1)"] == "pass"


def test_finite_dual_without_symmetry(capsys, problem_file):
    code, report = run_json(capsys, ["finite-dual", problem_file("non_symmetric_quotient")])
    assert code == EXIT_OK
    checks = statuses(report)
    assert checks["good subspace: B/()"] == "pass"
    assert checks["finite dual: B"] == "pass"
    assert checks["finite dual is the full dual: B"] == "pass"
    assert report["artifacts"]["finite_dual"]["dim"] == 4


def test_dualize_without_symmetry(capsys, problem_file):
    code, report = run_json(capsys, ["dualize", problem_file("non_symmetric_table")])
    assert code == EXIT_OK
    assert statuses(report)["lifted unit: B"] == "inconclusive"
    psi = dict(PROBLEMS["non_symmetric_table"], parameters={"colax": "psi"})
    code, report = run_json(capsys, ["dualize", problem_file(psi, "psi")])
    assert code == EXIT_OK
    assert statuses(report)["lifted unit: B"] == "pass"


def test_tambara(capsys, problem_file):
    code, report = run_json(capsys, ["tambara", problem_file("tambara_dual_numbers")])
    assert code == EXIT_OK
    assert report["artifacts"]["per_length_dims"] == [1, 2, 2, 2, 2, 2, 2]
    assert statuses(report)["pi_5"] == "pass"


def test_tambara_window_too_small(problem_file):
    assert run(["tambara", problem_file("tambara_dual_numbers"), "--truncate", "2"]) == EXIT_INPUT_ERROR


def test_adjunction_check_is_deterministic(capsys, problem_file):
    path = problem_file("adjunction_super")
    first = run_json(capsys, ["adjunction-check", path, "--cases", "5", "--seed", "3"])
    second = run_json(capsys, ["adjunction-check", path, "--cases", "5", "--seed", "3"])
    assert first == second
    code, report = first
    assert code == EXIT_OK
    assert report["seed"] == 3
    assert report["artifacts"]["cases"] == 5


def test_adjunction_check_without_symmetry(capsys, problem_file):
    code, report = run_json(capsys, ["adjunction-check", problem_file("adjunction_non_symmetric"), "--cases", "5"])
    assert code == EXIT_OK
    assert statuses(report)["colax from lax: psi2 = phi2 o monodromy, psi0 = phi0"] == "pass"


def test_emit_writes_artifacts_separately(capsys, problem_file, tmp_path):
    target = tmp_path / "artifacts.json"
    code, report = run_json(capsys, ["dualize", problem_file("ground_field"), "--emit", str(target)])
    assert code == EXIT_OK
    assert "artifacts" not in report
    assert "duals" in json.loads(target.read_text())


def test_text_output(capsys, problem_file):
    assert run(["validate", problem_file("super_exterior"), "--output", "text"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS" in out
    assert out.rstrip().endswith("2 passed, 0 failed, 0 inconclusive")
