from __future__ import annotations
import json
from collections import Counter
from dataclasses import dataclass, field

from ..utils.constants import REPORT_SCHEMA

STATUSES = ("pass", "fail", "derived")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class Check:
    check_id: str
    relation: str
    status: str
    residual_summary: str = ""
    derived_constants: dict[str, str] = field(default_factory=dict)
    millis: int = 0
    control: bool = False  # negative control, expected to fail

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r} for {self.check_id}")

    @property
    def ok(self) -> bool:
        if self.control:
            return self.status == "fail"
        return self.status != "fail"

    def to_dict(self, include_millis: bool = True) -> dict:
        out = {
            "check_id": self.check_id,
            "relation": self.relation,
            "status": self.status,
            "expected": "fail" if self.control else "pass",
            "ok": self.ok,
            "residual_summary": self.residual_summary,
            "derived_constants": dict(sorted(self.derived_constants.items())),
        }
        if include_millis:
            out["millis"] = self.millis
        return out


@dataclass
class Report:
    n: int
    degree: int
    params: str
    suites: tuple[str, ...]
    checks: list[Check] = field(default_factory=list)
    error: str | None = None  # budget exhaustion, names the offending check

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_BUDGET
        return EXIT_OK if all(c.ok for c in self.checks) else EXIT_FAIL

    def counts(self) -> dict[str, int]:
        seen = Counter(c.status for c in self.checks)
        out = {s: seen.get(s, 0) for s in STATUSES}
        out["controls"] = sum(c.control for c in self.checks)
        out["unexpected"] = sum(not c.ok for c in self.checks)
        return out

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self, include_millis: bool = True) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "config": {"n": self.n, "degree": self.degree, "params": self.params, "suites": list(self.suites)},
            "checks": [c.to_dict(include_millis) for c in self.checks],
            "summary": self.counts(),
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


# -------------------- Rendering --------------------
def _text(report: Report) -> str:
    lines = [f"qtwist report  n={report.n}  degree={report.degree}  params={report.params}  "
             f"suites={','.join(report.suites) or '-'}"]
    width = max((len(c.check_id) for c in report.checks), default=10)
    for c in report.checks:
        mark = c.status.upper()
        if c.control:
            mark += "*" if c.ok else "!"
        elif not c.ok:
            mark += "!"
        line = f"  {mark:<9} {c.check_id:<{width}}  [{c.relation}]"
        if c.residual_summary:
            line += f"  {c.residual_summary}"
        if c.derived_constants:
            line += "  " + ", ".join(f"{k}={v}" for k, v in sorted(c.derived_constants.items()))
        line += f"  ({c.millis} ms)"
        lines.append(line)
    counts = report.counts()
    lines.append(f"{counts['pass']} pass, {counts['fail']} fail, {counts['derived']} derived; "
                 f"{counts['controls']} negative controls, {counts['unexpected']} unexpected")
    if report.error is not None:
        lines.append(f"aborted: {report.error}")
    lines.append(f"exit {report.exit_code}")
    return "\n".join(lines) + "\n"


def report_render(report: Report, format: str = "json", include_millis: bool = True) -> bytes:
    """json is stable across runs once millis is dropped; text marks controls with * (failed as expected) or ! (not)."""
    if format == "json":
        return (json.dumps(report.to_dict(include_millis), indent=2, sort_keys=True) + "\n").encode()
    if format == "text":
        return _text(report).encode()
    raise ValueError(f"unknown report format {format!r}")
