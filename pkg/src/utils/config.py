from __future__ import annotations
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .constants import DEFAULT_DEGREE, DEFAULT_N, SUITES
from .errors import ConfigError

_LINE = re.compile(r"^\s*([A-Za-z_][\w.\-]*)\s*=\s*(.*?)\s*$")
_Q_KEY = re.compile(r"^q\.(\d+)\.(\d+)$")


@dataclass(frozen=True)
class ParamValue:
    """One entry of a parameter table: symbolic, an exact rational, or a root of unity."""
    kind: str  # "sym" | "rational" | "root"
    value: Fraction | int | None = None

    def resolve(self):
        from ..ring import RootOfUnity
        if self.kind == "sym":
            return "sym"
        if self.kind == "root":
            return RootOfUnity(self.value)
        return self.value

    def __str__(self) -> str:
        if self.kind == "sym":
            return "sym"
        if self.kind == "root":
            return f"root:{self.value}"
        return str(self.value)


def parse_param_value(text: str) -> ParamValue:
    text = text.strip().strip('"')
    if text in ("sym", "generic"):
        return ParamValue("sym")
    if text.startswith("root:"):
        try:
            K = int(text[5:])
        except ValueError as e:
            raise ConfigError(f"bad root order in {text!r}") from e
        if K < 2:
            raise ConfigError(f"root order must be at least 2, got {K}")
        return ParamValue("root", K)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"cannot parse parameter value {text!r}") from e
    if value == 0:
        raise ConfigError("parameters must be nonzero")
    return ParamValue("rational", value)


@dataclass
class RunConfig:
    n: int = DEFAULT_N
    params: dict[str, ParamValue] = field(default_factory=dict)
    degree: int = DEFAULT_DEGREE
    suites: tuple[str, ...] = SUITES
    output: str | None = None
    format: str = "json"
    root: int | None = None
    expect_fail: tuple[str, ...] = ()
    verbose: bool = False
    q13: str = "both"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        if self.degree < 1:
            raise ConfigError(f"degree must be at least 1, got {self.degree}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
        if self.q13 not in ("both", "constrained", "generic"):
            raise ConfigError(f"unknown q13 mode {self.q13!r}")
        q_names = {f"q{i}{j}" for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)}
        for key, value in self.params.items():
            if value.kind == "root" and key != "a":
                raise ConfigError(f"root:K is only allowed on a, not {key}")
            if key != "a" and key not in q_names:
                raise ConfigError(f"parameter {key} does not exist for n={self.n}")
        if self.root is not None and self.root < 2:
            raise ConfigError(f"root order must be at least 2, got {self.root}")

    # -------------------- Parameter table --------------------
    @property
    def params_mode(self) -> str:
        if self.root is not None:
            return f"root:{self.root}"
        if any(v.kind != "sym" for v in self.params.values()):
            return "numeric"
        return "sym"

    def assignment(self) -> dict:
        """Parameter name -> value accepted by ring.substitute; symbolic entries dropped."""
        out = {k: v.resolve() for k, v in self.params.items() if v.kind != "sym"}
        if self.root is not None:
            from ..ring import RootOfUnity
            out["a"] = RootOfUnity(self.root)
        return out

    # -------------------- Builders --------------------
    @classmethod
    def from_args(cls, args) -> RunConfig:
        base = cls()
        if getattr(args, "params", None) and args.params != "sym":
            if not os.path.exists(args.params):
                raise ConfigError(f"parameter file {args.params!r} not found")
            base = load_config_file(args.params)
        suites = base.suites
        if getattr(args, "suite", None):
            requested = []
            for item in args.suite:
                requested.extend(s.strip() for s in item.split(",") if s.strip())
            suites = SUITES if "all" in requested else tuple(s for s in SUITES if s in requested) + \
                tuple(s for s in requested if s not in SUITES)
        params = dict(base.params)
        root = base.root
        if getattr(args, "root", None) is not None:
            root = args.root
        if root is None and "a" in params and params["a"].kind == "root":
            root = params.pop("a").value
        return cls(
            n=args.n if getattr(args, "n", None) is not None else base.n,
            params=params,
            degree=args.degree if getattr(args, "degree", None) is not None else base.degree,
            suites=suites,
            output=getattr(args, "out", None) or base.output,
            format=getattr(args, "format", None) or base.format,
            root=root,
            expect_fail=tuple(base.expect_fail) + tuple(getattr(args, "expect_fail", None) or ()),
            verbose=bool(getattr(args, "verbose", False)) or base.verbose,
            q13=getattr(args, "q13", None) or base.q13,
        )


def parse_config_text(text: str) -> RunConfig:
    values: dict = {}
    params: dict[str, ParamValue] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = m.group(1), m.group(2).strip().strip('"')
        qm = _Q_KEY.match(key)
        if qm:
            i, j = int(qm.group(1)), int(qm.group(2))
            if not 1 <= i < j:
                raise ConfigError(f"line {lineno}: {key} needs 1 <= i < j")
            params[f"q{i}{j}"] = parse_param_value(value)
        elif key == "a":
            params["a"] = parse_param_value(value)
        elif key in ("n", "degree", "root"):
            try:
                values[key] = int(value)
            except ValueError as e:
                raise ConfigError(f"line {lineno}: {key} must be an integer, got {value!r}") from e
        elif key in ("suites", "expect_fail"):
            values[key] = tuple(s.strip() for s in value.split(",") if s.strip())
        elif key in ("format", "output", "q13"):
            values[key] = value
        elif key == "verbose":
            values[key] = value.lower() in ("1", "true", "yes")
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if "suites" in values and "all" in values["suites"]:
        values["suites"] = SUITES
    root = values.pop("root", None)
    if root is None and "a" in params and params["a"].kind == "root":
        root = params.pop("a").value
    return RunConfig(params=params, root=root, **values)


def load_config_file(path: str) -> RunConfig:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path!r}: {e}") from e
    return parse_config_text(text)
