REPORT_SCHEMA = "qtwist-report/1"

REWRITE_BUDGET = 10**6  # rule applications per normal_form call
DEFAULT_DEGREE = 4
DEFAULT_N = 2

# dependency order
SUITES = ("matrix", "algebra", "duality", "roots", "sl-reduce", "esoteric", "derive")

# negative controls expected to leave a nonzero residual
NEGATIVE_CONTROLS = (
    "matrix.hecke.corrupted",
    "algebra.confluence.corrupted",
    "algebra.braid.cyclic",
    "duality.pq.wrong_scalar",
    "roots.power.generic",
    "sl-reduce.unrescaled",
    "esoteric.unconstrained",
    "derive.serre.wrong_k",
)

ROOT_ORDERS = (2, 3)
