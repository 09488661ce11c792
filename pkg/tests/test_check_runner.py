"""Tests for the check runner, reports and runtime settings."""

import asyncio
import json
import time

import pytest

from config.settings import settings
from services.check_runner import CheckRunner
from services.objects import AxiomFailure, AxiomReport
from services.report import Check, CheckStatus, Report, input_digest


def slow_pass(name: str, delay: float) -> Check:
    time.sleep(delay)
    return Check.passed(name)


def broken() -> Check:
    raise RuntimeError("boom")


def bad_input() -> Check:
    raise ValueError("bad input")


def test_results_keep_registration_order():
    runner = CheckRunner(workers=3)
    for k, delay in enumerate([0.05, 0.0, 0.02]):
        runner.add(f"c{k}", slow_pass, f"c{k}", delay)
    runner.add("pair", lambda: [Check.passed("d"), Check.failed("e", "no")])
    checks = asyncio.run(runner.run())
    assert [c.name for c in checks] == ["c0", "c1", "c2", "d", "e"]
    assert len(runner) == 4


def test_unexpected_exceptions_become_failures():
    runner = CheckRunner(workers=1)
    runner.add("broken", broken)
    [check] = asyncio.run(runner.run())
    assert check.status is CheckStatus.FAIL
    assert check.detail == "internal error: boom"


def test_input_errors_propagate():
    runner = CheckRunner(workers=1)
    runner.add("bad", bad_input)
    with pytest.raises(ValueError, match="bad input"):
        asyncio.run(runner.run())


def test_progress_callbacks():
    updates = []
    runner = CheckRunner(workers=2)
    runner.add_progress_callback(updates.append)
    runner.add_progress_callback(lambda p: 1 / 0)
    runner.add("a", slow_pass, "a", 0)
    runner.add("b", slow_pass, "b", 0)
    asyncio.run(runner.run())
    assert sorted(u.progress for u in updates) == [50, 100]


def test_check_from_axioms():
    report = AxiomReport("A", ["associativity", "unit"])
    assert Check.from_axioms("A", report).detail == "2 laws hold"
    report.failures += [AxiomFailure("associativity", ("a", "a", "b"), "lhs != rhs")] * 2
    check = Check.from_axioms("A", report)
    assert check.status is CheckStatus.FAIL
    assert check.detail == "associativity: lhs != rhs (+1 more)"
    assert len(check.witness) == 2


def test_report_rendering():
    report = Report("validate", input_digest(b"{}"), 0, [
        Check.passed("alpha", "ok"),
        Check.failed("beta", "broken"),
        Check(name="gamma", status=CheckStatus.INCONCLUSIVE),
    ], {"k": 1})
    assert report.exit_code == 1
    data = json.loads(report.to_json())
    assert data["tool"] == "gdual"
    assert [c["status"] for c in data["checks"]] == ["pass", "fail", "inconclusive"]
    assert "artifacts" not in json.loads(report.to_json(include_artifacts=False))
    text = report.to_text()
    assert "[FAIL        ] beta   broken" in text
    assert text.rstrip().endswith("1 passed, 1 failed, 1 inconclusive")


def test_settings_reload(monkeypatch):
    monkeypatch.setenv("GDUAL_WINDOW", "5")
    monkeypatch.setenv("GDUAL_WORKERS", "many")
    try:
        settings.reload()
        assert settings.window == 5
        assert settings.workers == 4
        assert settings.to_dict()["window"] == 5
    finally:
        monkeypatch.undo()
        settings.reload()
