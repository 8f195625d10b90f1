from .report import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, STATUSES, Check, Report, report_render
from .context import SuiteContext, mat_outcome, residual_outcome, vanishes
from .runner import SUITE_RUNNERS, run
