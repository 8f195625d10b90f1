from __future__ import annotations
import argparse
import sys

from .ncalg import preset_factored, preset_pseudogroup
from .ring import ParamSpace
from .rmatrix import build_P, build_R
from .suites import EXIT_OK, EXIT_USAGE, report_render, run
from .utils import log
from .utils.config import RunConfig
from .utils.constants import DEFAULT_DEGREE, DEFAULT_N, SUITES
from .utils.errors import ConfigError

DUMPS = ("R", "P", "pseudogroup-rules", "factored-rules")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtwist", description="Exact checks for twisted quantum gl(N).")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help=f"matrix size (default {DEFAULT_N})")
    common.add_argument("--degree", type=int, default=None, help=f"truncation degree (default {DEFAULT_DEGREE})")
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="progress on stderr")

    check = sub.add_parser("check", parents=[common], help="run verification suites")
    check.add_argument("--suite", action="append", help=f"all or a comma list of {', '.join(SUITES)}")
    check.add_argument("--params", default=None, help="config file, or sym for fully symbolic parameters")
    check.add_argument("--root", type=int, default=None, help="send a to a primitive K-th root of unity")
    check.add_argument("--expect-fail", action="append", default=None, help="extra negative control check ids")
    check.add_argument("--q13", choices=("both", "constrained", "generic"), default=None)

    sub.add_parser("derive", parents=[common], help="solve the Serre coefficients")

    dump = sub.add_parser("dump", help="print matrices or rewriting rules for diffing")
    dump.add_argument("what", choices=DUMPS)
    dump.add_argument("--n", type=int, default=DEFAULT_N)
    dump.add_argument("--out", default=None)
    return parser


def _emit(data: bytes, out: str | None):
    if out:
        with open(out, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _dump(args) -> int:
    space = ParamSpace(args.n)
    if args.what == "R":
        text = build_R(space).to_json()
    elif args.what == "P":
        text = build_P(build_R(space)).to_json()
    elif args.what == "pseudogroup-rules":
        text = "\n".join(preset_pseudogroup(space).system.dump())
    else:
        text = "\n".join(preset_factored(space).system.dump())
    _emit((text + "\n").encode(), args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "dump":
            return _dump(args)
        if args.command == "derive":
            args.suite = ["derive"]
        config = RunConfig.from_args(args)
    except ConfigError as e:
        print(f"qtwist: {e}", file=sys.stderr)
        return EXIT_USAGE
    log.enable(config.verbose)
    report = run(config)
    _emit(report_render(report, config.format), config.output)
    if report.error is not None:
        print(f"qtwist: rewrite budget exhausted in {report.error}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
