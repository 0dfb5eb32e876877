"""Structured pass/fail reports shared by the checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

PASS = "PASS"
FAIL = "FAIL"
INDETERMINATE = "INDETERMINATE"


@dataclass
class CheckResult:
    name: str
    verdict: str
    witness: Optional[dict] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if any(r.verdict == FAIL for r in self.results):
            return FAIL
        if any(r.verdict == INDETERMINATE for r in self.results):
            return INDETERMINATE
        return PASS

    @property
    def all_pass(self) -> bool:
        return self.verdict == PASS

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def extend(self, other: "Report") -> None:
        self.results.extend(other.results)

    def to_json(self) -> dict:
        return {
            "schema_version": "1",
            "title": self.title,
            "verdict": self.verdict,
            "results": [r.to_json() for r in self.results],
        }

    def render_text(self) -> str:
        lines = [f"# {self.title}"]
        for r in self.results:
            line = f"{r.verdict}\t{r.name}"
            if r.reason:
                line += f"\t{r.reason}"
            lines.append(line)
        lines.append(f"# verdict: {self.verdict}")
        return "\n".join(lines)


def _plain(obj):
    """Coerce witnesses into JSON-friendly structures."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return repr(obj)
