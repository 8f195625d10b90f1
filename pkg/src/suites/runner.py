from __future__ import annotations

from ..utils import log
from ..utils.config import RunConfig
from ..utils.constants import SUITES
from ..utils.errors import RewriteBudgetError
from .algebraic import algebra_suite, esoteric_suite, matrix_suite, sl_suite
from .context import SuiteContext
from .dual import derive_suite, duality_suite, roots_suite
from .report import Report

SUITE_RUNNERS = {
    "matrix": matrix_suite,
    "algebra": algebra_suite,
    "duality": duality_suite,
    "roots": roots_suite,
    "sl-reduce": sl_suite,
    "esoteric": esoteric_suite,
    "derive": derive_suite,
}


def run(config: RunConfig) -> Report:
    """Run the selected suites in dependency order; a blown rewrite budget stops the run."""
    ctx = SuiteContext.build(config)
    for name in SUITES:
        if name not in config.suites:
            continue
        log.progress(f"suite {name}: n={config.n} degree={config.degree}")
        try:
            SUITE_RUNNERS[name](ctx)
        except RewriteBudgetError as e:
            ctx.report.error = f"{e.check_id or name}: {e}"
            log.progress(f"aborted in {e.check_id or name}")
            break
    return ctx.report
