import json
from fractions import Fraction

import pytest

from src.main import main
from src.ring import RootOfUnity
from src.suites import Check, Report, report_render
from src.utils.config import parse_config_text, parse_param_value
from src.utils.constants import REPORT_SCHEMA, SUITES
from src.utils.errors import ConfigError


def load(path):
    with open(path) as f:
        return json.load(f)


# -------------------- Config Tests --------------------
def test_param_values():
    assert parse_param_value("sym").kind == "sym"
    assert parse_param_value('"3/2"').value == Fraction(3, 2)
    root = parse_param_value("root:3")
    assert root.kind == "root" and root.resolve() == RootOfUnity(3)


@pytest.mark.parametrize("text", ["0", "root:1", "root:x", "abc"])
def test_bad_param_values(text):
    with pytest.raises(ConfigError):
        parse_param_value(text)


def test_config_grammar():
    cfg = parse_config_text(
        "# comment\n"
        "n = 3\n"
        "degree = 4\n"
        "suites = matrix, algebra\n"
        'q.1.2 = "3/2"\n'
        'q.1.3 = "sym"\n'
        'a = "root:3"\n'
        "expect_fail = esoteric.unconstrained\n"
    )
    assert cfg.n == 3 and cfg.degree == 4
    assert cfg.suites == ("matrix", "algebra")
    assert cfg.root == 3
    assert cfg.params_mode == "root:3"
    assert cfg.assignment() == {"q12": Fraction(3, 2), "a": RootOfUnity(3)}
    assert cfg.expect_fail == ("esoteric.unconstrained",)


def test_config_all_suites():
    assert parse_config_text("suites = all\n").suites == SUITES


def test_config_multi_digit_indices():
    cfg = parse_config_text("n = 11\nq.10.11 = 2\nq.2.11 = sym\n")
    assert cfg.assignment() == {"q1011": Fraction(2)}


@pytest.mark.parametrize("text", [
    "n = 1\n",
    "degree = 0\n",
    "colour = red\n",
    "n 3\n",
    "q.1.2 = root:2\n",
    "n = 2\nq.1.3 = 2\n",
    "n = 3\nq.2.1 = 2\n",
    "n = 11\nq.11.12 = 2\n",
    "suites = matrix, plotting\n",
])
def test_config_rejects(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


# -------------------- Report Tests --------------------
def test_empty_report():
    report = Report(2, 4, "sym", ())
    assert report.exit_code == 0
    data = json.loads(report_render(report, "json"))
    assert data["schema"] == REPORT_SCHEMA
    assert data["checks"] == []
    assert data["summary"]["unexpected"] == 0


def test_failing_check_sets_exit_code():
    report = Report(2, 4, "sym", ("matrix",), [
        Check("matrix.hecke", "hecke", "pass", "residual 0"),
        Check("matrix.ybe", "yang-baxter", "fail", "1 nonzero entries, first at (1, 2)x(2, 1): a"),
    ])
    assert report.exit_code == 1
    assert [c.check_id for c in report.failures()] == ["matrix.ybe"]
    text = report_render(report, "text").decode()
    assert "(1, 2)x(2, 1)" in text
    assert text.rstrip().endswith("exit 1")


def test_controls_invert_expectation():
    failing_control = Check("matrix.hecke.corrupted", "hecke", "fail", control=True)
    passing_control = Check("matrix.hecke.corrupted", "hecke", "pass", control=True)
    assert Report(2, 4, "sym", (), [failing_control]).exit_code == 0
    assert Report(2, 4, "sym", (), [passing_control]).exit_code == 1


def test_derived_counts_as_ok():
    check = Check("derive.serre.P1", "serre", "derived", derived_constants={"r": "1/a"})
    assert check.ok
    assert Report(3, 4, "sym", (), [check]).exit_code == 0


def test_budget_error_exit_code():
    report = Report(2, 4, "sym", (), error="algebra.factorization: budget")
    assert report.exit_code == 3


def test_unknown_status():
    with pytest.raises(ValueError):
        Check("x", "y", "maybe")


def test_json_and_text_agree():
    report = Report(2, 4, "sym", ("matrix",), [
        Check("a", "hecke", "pass", millis=5),
        Check("b", "hecke", "fail", control=True, millis=7),
        Check("c", "serre", "derived", millis=1),
    ])
    data = json.loads(report_render(report, "json"))
    text = report_render(report, "text").decode()
    counts = data["summary"]
    assert f"{counts['pass']} pass, {counts['fail']} fail, {counts['derived']} derived" in text
    assert counts["controls"] == 1


def test_json_stable_without_millis():
    first = Report(2, 4, "sym", (), [Check("a", "hecke", "pass", millis=5)])
    second = Report(2, 4, "sym", (), [Check("a", "hecke", "pass", millis=9)])
    assert report_render(first, "json", include_millis=False) == report_render(second, "json", include_millis=False)


# -------------------- CLI Tests --------------------
def test_cli_usage_errors():
    assert main(["check", "--n", "1"]) == 2
    assert main(["check", "--suite", "bogus"]) == 2
    assert main(["check", "--params", "/nonexistent/params.cfg"]) == 2


def test_cli_matrix_suite(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--n", "2", "--suite", "matrix", "--params", "sym", "--out", str(out)]) == 0
    data = load(out)
    ids = {c["check_id"]: c for c in data["checks"]}
    assert ids["matrix.hecke"]["status"] == "pass"
    assert ids["matrix.hecke.corrupted"]["status"] == "fail"
    assert ids["matrix.hecke.corrupted"]["ok"]


def test_cli_numeric_params(tmp_path):
    cfg = tmp_path / "params.cfg"
    cfg.write_text("n = 2\nq.1.2 = 3/2\na = 2\nsuites = matrix\n")
    out = tmp_path / "report.json"
    assert main(["check", "--params", str(cfg), "--out", str(out)]) == 0
    assert load(out)["config"]["params"] == "numeric"


def test_cli_sl_reduce_text(tmp_path):
    out = tmp_path / "report.txt"
    assert main(["check", "--n", "2", "--suite", "sl-reduce", "--format", "text", "--out", str(out)]) == 0
    text = out.read_text()
    assert "sl-reduce.rescaling" in text
    assert "FAIL*" in text


def test_cli_expect_fail_flags_passing_check(tmp_path):
    out = tmp_path / "report.json"
    code = main(["check", "--n", "2", "--suite", "matrix", "--expect-fail", "matrix.ybe", "--out", str(out)])
    assert code == 1
    bad = [c["check_id"] for c in load(out)["checks"] if not c["ok"]]
    assert bad == ["matrix.ybe"]


def test_cli_dump_R(tmp_path):
    out = tmp_path / "R.json"
    assert main(["dump", "R", "--n", "2", "--out", str(out)]) == 0
    data = load(out)
    assert data["n"] == 2 and data["legs"] == 2


@pytest.mark.slow
def test_cli_duality_n2(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--n", "2", "--degree", "4", "--suite", "duality", "--out", str(out)]) == 0
    statuses = {c["check_id"]: c["status"] for c in load(out)["checks"]}
    assert statuses["duality.pq"] == "pass"
    assert statuses["duality.phi"] in ("pass", "derived")
    assert statuses["duality.pq.wrong_scalar"] == "fail"


@pytest.mark.slow
def test_cli_esoteric_generic(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--n", "3", "--suite", "esoteric", "--q13", "generic", "--out", str(out)]) == 0
    checks = load(out)["checks"]
    assert [c["check_id"] for c in checks] == ["esoteric.unconstrained"]
    assert checks[0]["status"] == "fail" and checks[0]["ok"]
