from __future__ import annotations
import time
from dataclasses import dataclass
from fractions import Fraction

from ..ring import ParamSpace, substitute
from ..tensor import Mat
from ..utils import log
from ..utils.config import RunConfig
from ..utils.constants import NEGATIVE_CONTROLS
from ..utils.errors import DegreeOverflowError, NoExactRootError, PoleError, RewriteBudgetError
from .report import Check, Report

Outcome = tuple  # (status, residual_summary, derived_constants)


def vanishes(x, assignment: dict) -> bool:
    """x == 0 after applying the parameter table; symbolic when the table is empty."""
    if not assignment:
        return x.is_zero()
    try:
        v = substitute(x, assignment)
    except NoExactRootError:
        # fractional powers of a root of unity: decide symbolically
        return x.is_zero()
    return v == 0 if isinstance(v, Fraction) else v.is_zero()


def mat_outcome(res: Mat, assignment: dict) -> Outcome:
    bad = []
    for idx, x in enumerate(res.entries.flat):
        if not vanishes(x, assignment):
            bad.append((idx, x))
    if not bad:
        return "pass", "residual 0", {}
    idx, x = bad[0]
    row, col = divmod(idx, res.size)
    return "fail", f"{len(bad)} nonzero entries, first at {res.unflat(row)}x{res.unflat(col)}: {x}", {}


def list_outcome(items: list, what: str = "violations") -> Outcome:
    if not items:
        return "pass", f"no {what}", {}
    return "fail", f"{len(items)} {what}, first: {items[0]}", {}


def residual_outcome(relations) -> Outcome:
    relations = list(relations)
    bad = [r for r in relations if not r.holds]
    if not bad:
        return "pass", f"{len(relations)} relations, residual 0", {}
    first = bad[0]
    return "fail", f"{len(bad)} of {len(relations)} nonzero, {first.name}: {first.witness()}", {}


def flag(ok: bool, summary_ok: str, summary_bad: str) -> Outcome:
    return ("pass", summary_ok, {}) if ok else ("fail", summary_bad, {})


@dataclass
class SuiteContext:
    config: RunConfig
    space: ParamSpace
    report: Report

    @classmethod
    def build(cls, config: RunConfig) -> SuiteContext:
        n = config.n
        space = ParamSpace(n)
        report = Report(n, config.degree, config.params_mode, tuple(config.suites))
        return cls(config, space, report)

    @property
    def assignment(self) -> dict:
        return self.config.assignment()

    def is_control(self, check_id: str) -> bool:
        return check_id in NEGATIVE_CONTROLS or check_id in self.config.expect_fail

    def record(self, check_id: str, relation: str, fn) -> Check:
        """Run fn() -> (status, summary, constants) and append the timed Check."""
        start = time.perf_counter()
        try:
            status, summary, constants = fn()
        except PoleError as e:
            status, summary, constants = "fail", f"pole: {e} at {e.witness}", {}
        except DegreeOverflowError as e:
            status, summary, constants = "fail", f"truncation too low: {e}", {}
        except RewriteBudgetError as e:
            e.check_id = check_id
            raise
        check = Check(check_id, relation, status, summary, {k: str(v) for k, v in constants.items()},
                      log.elapsed_ms(start), self.is_control(check_id))
        self.report.checks.append(check)
        log.progress(f"{check_id}: {status} ({check.millis} ms)")
        return check
