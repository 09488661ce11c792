"""Check records and the report printed by every command."""

import enum
import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Optional

from services.objects import AxiomReport

TOOL = "gdual"
VERSION = "0.1.0"


class CheckStatus(enum.Enum):
    """Outcome of a single check."""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Check:
    name: str
    status: CheckStatus
    detail: str = ""
    witness: Optional[Any] = None

    @classmethod
    def from_axioms(cls, name: str, report: AxiomReport) -> "Check":
        if report.passed:
            return cls(name, CheckStatus.PASS, f"{len(report.laws)} laws hold")
        first = report.failures[0]
        detail = f"{first.law}: {first.detail}"
        if len(report.failures) > 1:
            detail += f" (+{len(report.failures) - 1} more)"
        return cls(name, CheckStatus.FAIL, detail, [f.to_dict() for f in report.failures])

    @classmethod
    def passed(cls, name: str, detail: str = "", witness: Optional[Any] = None) -> "Check":
        return cls(name, CheckStatus.PASS, detail, witness)

    @classmethod
    def failed(cls, name: str, detail: str, witness: Optional[Any] = None) -> "Check":
        return cls(name, CheckStatus.FAIL, detail, witness)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        out = {"name": self.name, "status": self.status.value, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def input_digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


@dataclass
class Report:
    command: str
    input_digest: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status is CheckStatus.FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def counts(self) -> dict[str, int]:
        return {s.value: sum(c.status is s for c in self.checks) for s in CheckStatus}

    def to_dict(self, include_artifacts: bool = True) -> dict:
        out = {
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if include_artifacts:
            out["artifacts"] = self.artifacts
        return out

    def to_json(self, include_artifacts: bool = True) -> str:
        return json.dumps(self.to_dict(include_artifacts), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        counts = self.counts()
        lines = [
            "=" * 60,
            f"{TOOL} {VERSION} - {self.command}",
            f"input {self.input_digest}  seed {self.seed}",
            "=" * 60,
        ]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            lines.append(f"  [{c.status.value.upper():<12}] {c.name:<{width}}  {c.detail}".rstrip())
        if not self.checks:
            lines.append("  (no checks)")
        lines.append("=" * 60)
        lines.append(
            f"{counts['pass']} passed, {counts['fail']} failed, {counts['inconclusive']} inconclusive"
        )
        return "\n".join(lines) + "\n"
