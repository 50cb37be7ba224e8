"""Structured pass/fail reports for the verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    """Accumulates named checks plus the values (polynomials, words) they
    were computed from. Timings are kept separate so that the default
    serialized form is byte-stable run to run."""

    title: str
    checks: list[CheckResult] = field(default_factory=list)
    data: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def record(self, name: str, value) -> None:
        self.data[name] = str(value)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_doc(self, include_timings: bool = False) -> dict:
        doc = {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "data": dict(sorted(self.data.items())),
        }
        if include_timings:
            doc["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return doc

    def human(self, include_timings: bool = False) -> str:
        lines = [self.title]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
        for k, v in sorted(self.data.items()):
            lines.append(f"  {k} = {v}")
        if include_timings:
            for k, v in self.timings.items():
                lines.append(f"  time {k}: {v:.3f}s")
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {self.title}")
        return "\n".join(lines)
