"""Command-line front end: ``eval``, ``verify`` and ``sweep``.

Exit codes: 0 success, 1 usage error, 2 formula error (pole, vanishing
denominator, degenerate parameters), 3 verification failure.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import itertools
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .complexified import (
    ComplexPairShape,
    complex_aomoto,
    complex_selberg_schur,
    corollary12_ratio,
    dotsenko_J00,
    region_recursion_factor,
)
from .errors import FormulaError, OracleError, PoleError, ZeroDenominatorError
from .jsonio import dumps, format_float
from .oracle.checks import (
    VerificationReport,
    check_complex_N1,
    check_integrals,
    check_lemma,
    check_monomial,
    check_psi_recurrence_all,
    check_region_ratio,
)
from .oracle.quadrature import QuadratureSpec, _default_budget
from .partitions import Partition, TwoColumnShape, make_partition, partitions_of, two_column_shapes
from .selberg import (
    LogValue,
    SelbergParams,
    aomoto,
    kadell_rho1,
    monomial_two_column_integral,
    selberg_J0,
    selberg_schur,
    validate_conditions,
)

EXIT_OK, EXIT_USAGE, EXIT_FORMULA, EXIT_FAILED = 0, 1, 2, 3

FORMULAS = (
    "selberg_J0",
    "aomoto",
    "kadell_rho1",
    "theorem5",
    "theorem7",
    "dotsenko",
    "complex_aomoto",
    "theorem14",
    "prop9_factor",
    "corollary12_ratio",
)
SUITES = ("selberg_J0", "aomoto", "kadell_rho1", "theorem5", "theorem7", "lemmas", "psi", "complex", "prop9_factor")
FORMATS = ("json", "csv", "pretty")
DEFAULT_AB = (0.7, 1.5, 2.3)
DEFAULT_RHO = (0.5, 1.0, 1.7)
DEFAULT_N = (1, 2, 3)
COMPLEX_AB = (0.2, 0.3)
# Nodes per dimension that reach each N's tolerance tier on the default grid.
DEFAULT_NODES = {1: 128, 2: 2400, 3: 160, 4: 56, 5: 32}


class UsageError(Exception):
    """Bad command-line input; exit code 1."""


# Inputs ---------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """``"1.5"``, ``"1.5+0.2i"``, ``"-0.3i"``; ``j`` works as well as ``i``."""
    raw = text.strip().replace(" ", "")
    try:
        return complex(raw.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a number (use re or re+imi)") from None


def parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}: expected comma-separated integers") from None


def parse_partition(text: str) -> Partition:
    try:
        return make_partition(parse_ints(text, "partition"))
    except ValueError as exc:
        raise UsageError(f"malformed partition {text!r}: {exc}") from None


def parse_shape(text: str, N: int) -> TwoColumnShape:
    vals = parse_ints(text, "shape")
    if len(vals) != 2:
        raise UsageError(f"malformed shape {text!r}: expected n,m")
    try:
        return TwoColumnShape(vals[0], vals[1], N)
    except ValueError as exc:
        raise UsageError(f"invalid shape {text!r}: {exc}") from None


@dataclass(frozen=True)
class FormulaInputs:
    """Shape-like arguments; which ones a formula needs is checked at evaluation."""

    shape: tuple[int, int] | None = None
    partition: Partition | None = None
    shape_bar: tuple[int, int] | None = None
    partition_bar: Partition | None = None
    m: int | None = None
    mbar: int | None = None
    q: int | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        for name in ("shape", "shape_bar"):
            val = getattr(self, name)
            if val is not None:
                out[name] = list(val)
        for name in ("partition", "partition_bar"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val.to_json()
        for name in ("m", "mbar", "q"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out

    @classmethod
    def from_json(cls, data: dict) -> FormulaInputs:
        return cls(
            shape=tuple(data["shape"]) if "shape" in data else None,
            partition=make_partition(data["partition"]) if "partition" in data else None,
            shape_bar=tuple(data["shape_bar"]) if "shape_bar" in data else None,
            partition_bar=make_partition(data["partition_bar"]) if "partition_bar" in data else None,
            m=data.get("m"),
            mbar=data.get("mbar"),
            q=data.get("q"),
        )

    def two_column(self, N: int, bar: bool = False) -> TwoColumnShape:
        shape = self.shape_bar if bar else self.shape
        part = self.partition_bar if bar else self.partition
        flag = "--shape-bar" if bar else "--shape"
        try:
            if shape is not None:
                return TwoColumnShape(shape[0], shape[1], N)
            if part is not None:
                return TwoColumnShape.from_partition(part, N)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        raise UsageError(f"this formula needs {flag} n,m")

    def any_partition(self, N: int, bar: bool = False) -> Partition:
        part = self.partition_bar if bar else self.partition
        if part is not None:
            if part.length() > N:
                raise UsageError(f"partition {part} has more than N={N} parts")
            return part
        return self.two_column(N, bar).to_partition()

    def require(self, name: str) -> int:
        val = getattr(self, name)
        if val is None:
            raise UsageError(f"this formula needs --{name}")
        return val


@dataclass(frozen=True)
class RunConfig:
    command: str
    formula: str
    params: SelbergParams
    inputs: FormulaInputs = field(default_factory=FormulaInputs)
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}, got {self.format!r}")

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "formula": self.formula,
            "params": self.params.to_json(),
            "inputs": self.inputs.to_json(),
            "spec": self.spec.to_json(),
            "output": self.output,
            "format": self.format,
        }

    @classmethod
    def from_json(cls, data: dict) -> RunConfig:
        return cls(
            command=data["command"],
            formula=data["formula"],
            params=SelbergParams.from_json(data["params"]),
            inputs=FormulaInputs.from_json(data["inputs"]),
            spec=QuadratureSpec.from_json(data["spec"]),
            output=data["output"],
            format=data["format"],
        )


# Evaluation -----------------------------------------------------------------


def _log_of(z: complex) -> LogValue:
    if z == 0:
        return LogValue(-math.inf, 0.0)
    return LogValue(math.log(abs(z)), cmath.phase(z))


def _with_log(fn: Callable[..., Any]) -> Callable[[SelbergParams, FormulaInputs], tuple[complex, LogValue]]:
    def run(p: SelbergParams, inp: FormulaInputs) -> tuple[complex, LogValue]:
        log = fn(p, inp, True)
        return log.value, log

    return run


def _plain(fn: Callable[[SelbergParams, FormulaInputs], complex]):
    def run(p: SelbergParams, inp: FormulaInputs) -> tuple[complex, LogValue]:
        value = complex(fn(p, inp))
        return value, _log_of(value)

    return run


def _complex_shapes(p: SelbergParams, inp: FormulaInputs) -> ComplexPairShape:
    return ComplexPairShape(inp.any_partition(p.N), inp.any_partition(p.N, bar=True))


_EVALUATORS = {
    "selberg_J0": _with_log(lambda p, inp, lg: selberg_J0(p, as_log=lg)),
    "aomoto": _with_log(lambda p, inp, lg: aomoto(p, inp.require("m"), as_log=lg)),
    "kadell_rho1": _with_log(lambda p, inp, lg: kadell_rho1(p, inp.any_partition(p.N), as_log=lg)),
    "theorem5": _with_log(
        lambda p, inp, lg: monomial_two_column_integral(
            p, inp.two_column(p.N).n, inp.two_column(p.N).m, as_log=lg
        )
    ),
    "theorem7": _with_log(lambda p, inp, lg: selberg_schur(p, inp.two_column(p.N), as_log=lg)),
    "dotsenko": _with_log(lambda p, inp, lg: dotsenko_J00(p, as_log=lg)),
    "complex_aomoto": _with_log(
        lambda p, inp, lg: complex_aomoto(p, inp.require("m"), inp.require("mbar"), as_log=lg)
    ),
    "theorem14": _with_log(lambda p, inp, lg: complex_selberg_schur(p, _complex_shapes(p, inp), as_log=lg)),
    "prop9_factor": _plain(lambda p, inp: region_recursion_factor(p, inp.require("q"))),
    "corollary12_ratio": _plain(lambda p, inp: corollary12_ratio(p)),
}


def evaluate(formula: str, p: SelbergParams, inputs: FormulaInputs) -> tuple[complex, LogValue]:
    """Closed-form value and its log-magnitude/phase form.

    Raises :class:`UsageError` for missing or malformed inputs and
    :class:`FormulaError` when the formula itself cannot be evaluated.
    """
    if formula not in _EVALUATORS:
        raise UsageError(f"unknown formula {formula!r}; choose from {', '.join(FORMULAS)}")
    try:
        return _EVALUATORS[formula](p, inputs)
    except (UsageError, FormulaError):
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def eval_record(config: RunConfig) -> dict:
    value, log = evaluate(config.formula, config.params, config.inputs)
    return {
        "formula": config.formula,
        "params": config.params.to_json(),
        "shape": config.inputs.to_json(),
        "value": {"re": value.real, "im": value.imag},
        "log": log.to_json(),
        "conditions": validate_conditions(config.params).to_json(),
    }


# Output ---------------------------------------------------------------------


def _flatten(record: dict, prefix: str = "") -> dict:
    out: dict[str, Any] = {}
    for key, val in record.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            out.update(_flatten(val, name + "."))
        elif isinstance(val, (list, tuple)):
            out[name] = dumps(val)
        else:
            out[name] = val
    return out


def _cell(val: Any) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, float):
        return format_float(val)
    if val is None:
        return ""
    return str(val)


def render(records: Sequence[dict], fmt: str) -> str:
    """One JSON object per line, a CSV table, or aligned ``key = value`` blocks."""
    if fmt == "json":
        return "".join(dumps(r) + "\n" for r in records)
    flat = [_flatten(r) for r in records]
    if fmt == "csv":
        columns: list[str] = []
        for row in flat:
            columns.extend(k for k in row if k not in columns)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in flat:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    blocks = []
    for row in flat:
        width = max((len(k) for k in row), default=0)
        blocks.append("\n".join(f"{k.ljust(width)} = {_cell(v)}" for k, v in row.items()))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ordered_map(fn: Callable[[Any], Any], items: Sequence[Any], jobs: int) -> list[Any]:
    """Results in input order whatever the worker count."""
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# Commands -------------------------------------------------------------------


def cmd_eval(config: RunConfig) -> int:
    _emit(render([eval_record(config)], config.format), config.output)
    return EXIT_OK


def sweep_rows(config: RunConfig, axis: str, values: Iterable[float], jobs: int = 1) -> list[dict]:
    """One row per axis value; formula errors mark the row and the sweep goes on."""

    def row(x: float) -> dict:
        p = config.params.replace(**{axis: x})
        base = {axis: float(x)}
        try:
            value, log = evaluate(config.formula, p, config.inputs)
        except (PoleError, ZeroDenominatorError) as exc:
            return {**base, "status": "pole", "re": None, "im": None, "logabs": None, "arg": None, "message": str(exc)}
        except FormulaError as exc:
            return {**base, "status": "error", "re": None, "im": None, "logabs": None, "arg": None, "message": str(exc)}
        return {
            **base, "status": "ok", "re": value.real, "im": value.imag,
            "logabs": log.logabs, "arg": log.arg, "message": "",
        }

    return _ordered_map(row, list(values), jobs)


def cmd_sweep(config: RunConfig, axis: str, start: float, stop: float, count: int, jobs: int = 1) -> int:
    if axis not in ("a", "b", "rho"):
        raise UsageError(f"sweep axis must be a, b or rho, got {axis!r}")
    if count < 1:
        raise UsageError("--count must be positive")
    if config.formula not in _EVALUATORS:
        raise UsageError(f"unknown formula {config.formula!r}")
    rows = sweep_rows(config, axis, np.linspace(start, stop, count), jobs)
    _emit(render(rows, config.format), config.output)
    return EXIT_OK


def _grid_points(a: Sequence[complex], b: Sequence[complex], rho: Sequence[complex], Ns: Sequence[int]) -> list[SelbergParams]:
    return [SelbergParams(x, y, r, n) for n, x, y, r in itertools.product(Ns, a, b, rho)]


def _suite_cases(suite: str, p: SelbergParams, inputs: FormulaInputs, spec: QuadratureSpec) -> list[VerificationReport]:
    N = p.N
    if suite in ("theorem7", "selberg_J0", "aomoto", "kadell_rho1"):
        if suite == "theorem7":
            if inputs.shape is not None or inputs.partition is not None:
                lams = [inputs.two_column(N).to_partition()]
            else:
                lams = [s.to_partition() for s in two_column_shapes(N)]
        elif suite == "selberg_J0":
            lams = [Partition()]
        elif suite == "aomoto":
            ms = [inputs.m] if inputs.m is not None else list(range(N + 1))
            lams = [make_partition([1] * m) for m in ms]
        else:
            if p.rho != 1:
                return []
            if inputs.partition is not None:
                lams = [inputs.partition]
            else:
                lams = [lam for k in range(4) for lam in partitions_of(k) if lam.length() <= N]
        return check_integrals(p, lams, spec, formula=suite)
    if suite == "theorem5":
        if inputs.shape is not None:
            pairs = [inputs.shape]
        else:
            pairs = [(s.n, s.m) for s in two_column_shapes(N)]
        return [check_monomial(p, n, m, spec) for n, m in pairs]
    if suite == "lemmas":
        reports = []
        for lemma in (1, 2, 3, 4):
            for m in range(1, N + 1):
                for n in range(m):
                    for k in (range(2, N + 1) if lemma in (1, 3) else [None]):
                        reports.append(check_lemma(lemma, p, n, m, k, spec, extrapolate=N >= 3))
        return reports
    if suite == "psi":
        return check_psi_recurrence_all(p, spec, extrapolate=N >= 4)
    if suite == "complex":
        if inputs.partition is not None or inputs.shape is not None:
            pairs = [(inputs.any_partition(N).part(1), inputs.any_partition(N, bar=True).part(1))]
        else:
            pairs = [(0, 0), (1, 1), (2, 1)]
        return [check_complex_N1(p, k, kb, spec) for k, kb in pairs]
    if suite == "prop9_factor":
        lam = inputs.partition or Partition()
        qs = [inputs.q] if inputs.q is not None else list(range(1, N + 1))
        return [check_region_ratio(p, lam, q, spec) for q in qs]
    raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _error_record(suite: str, p: SelbergParams, exc: Exception) -> dict:
    return {"formula": suite, "params": p.to_json(), "error": f"{type(exc).__name__}: {exc}", "pass": False}


def verify_records(
    suite: str,
    points: Sequence[SelbergParams],
    inputs: FormulaInputs,
    spec_for: Callable[[int], QuadratureSpec],
    jobs: int = 1,
) -> list[dict]:
    """Reports (or per-point error records) in deterministic point order."""

    def run(p: SelbergParams) -> list[dict]:
        try:
            return [r.to_json() for r in _suite_cases(suite, p, inputs, spec_for(p.N))]
        except UsageError:
            raise
        except (FormulaError, OracleError, ValueError) as exc:
            return [_error_record(suite, p, exc)]

    return [rec for chunk in _ordered_map(run, list(points), jobs) for rec in chunk]


def summary(records: Sequence[dict]) -> dict:
    rels = [r["rel_error"] for r in records if "rel_error" in r]
    passed = sum(1 for r in records if r.get("pass"))
    return {
        "summary": {
            "cases": len(records),
            "passed": passed,
            "failed": len(records) - passed,
            "max_rel_error": max(rels) if rels else None,
        }
    }


def cmd_verify(
    suite: str,
    points: Sequence[SelbergParams],
    inputs: FormulaInputs,
    spec_for: Callable[[int], QuadratureSpec],
    fmt: str = "json",
    out: str | None = None,
    jobs: int = 1,
) -> int:
    records = verify_records(suite, points, inputs, spec_for, jobs)
    summ = summary(records)
    text = render(records, fmt)
    tail = summ["summary"]
    line = (
        f"{tail['passed']}/{tail['cases']} passed, max rel error "
        + (format(tail["max_rel_error"], ".3e") if tail["max_rel_error"] is not None else "n/a")
    )
    if fmt == "json":
        text += dumps(summ) + "\n"
    else:
        text += line + "\n"
    _emit(text, out)
    if out:
        print(line, file=sys.stderr)
    return EXIT_OK if records and tail["failed"] == 0 else EXIT_FAILED


# Argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", default="1", help="re or re+imi")
    sub.add_argument("--b", default="1", help="re or re+imi")
    sub.add_argument("--rho", default="1", help="re or re+imi")
    sub.add_argument("--N", type=int, default=None)
    sub.add_argument("--shape", help="two-column shape n,m")
    sub.add_argument("--partition", help="partition such as 2,2,1")
    sub.add_argument("--shape-bar", dest="shape_bar", help="antiholomorphic shape n,m")
    sub.add_argument("--partition-bar", dest="partition_bar", help="antiholomorphic partition")
    sub.add_argument("--m", type=int)
    sub.add_argument("--mbar", type=int)
    sub.add_argument("--q", type=int)
    sub.add_argument("--nodes", type=int, help="quadrature nodes per dimension")
    sub.add_argument("--budget", type=int, help="maximum tensor grid size")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--format", choices=FORMATS, default="json")
    sub.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="selberg-schur", description="Selberg-Schur integrals: closed forms and checks.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    ev = subs.add_parser("eval", help="evaluate one closed form")
    ev.add_argument("formula", choices=FORMULAS)
    _add_common(ev)
    ve = subs.add_parser("verify", help="compare closed forms with the quadrature oracle")
    ve.add_argument("formula", choices=SUITES, metavar="suite")
    ve.add_argument("--grid", choices=("default", "point"), default="point")
    _add_common(ve)
    sw = subs.add_parser("sweep", help="tabulate a formula along one parameter")
    sw.add_argument("formula", choices=FORMULAS)
    sw.add_argument("--axis", choices=("a", "b", "rho"), default="rho")
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--count", type=int, required=True)
    _add_common(sw)
    return parser


def _inputs(args: argparse.Namespace, N: int) -> FormulaInputs:
    def shape(text: str | None) -> tuple[int, int] | None:
        if text is None:
            return None
        sh = parse_shape(text, N)
        return (sh.n, sh.m)

    return FormulaInputs(
        shape=shape(args.shape),
        partition=parse_partition(args.partition) if args.partition else None,
        shape_bar=shape(args.shape_bar),
        partition_bar=parse_partition(args.partition_bar) if args.partition_bar else None,
        m=args.m,
        mbar=args.mbar,
        q=args.q,
    )


def _spec(args: argparse.Namespace, N: int) -> QuadratureSpec:
    nodes = args.nodes or DEFAULT_NODES.get(N, 8)
    budget = args.budget if args.budget is not None else _default_budget()
    if args.nodes is None and nodes**N > budget:
        budget = nodes**N
    return QuadratureSpec(nodes_per_dim=nodes, seed=args.seed, budget=budget, workers=1)


def _points(args: argparse.Namespace) -> list[SelbergParams]:
    if args.grid == "default":
        if args.formula in ("complex", "prop9_factor"):
            Ns = [1 if args.N is None else args.N]
            ab = COMPLEX_AB if args.formula == "complex" else (0.2, 0.3, 0.4)
            return _grid_points(ab, ab, [parse_complex(args.rho)], Ns)
        Ns = list(DEFAULT_N) if args.N is None else [args.N]
        rhos = [1.0] if args.formula == "kadell_rho1" else DEFAULT_RHO
        return _grid_points(DEFAULT_AB, DEFAULT_AB, rhos, Ns)
    return [SelbergParams(parse_complex(args.a), parse_complex(args.b), parse_complex(args.rho), _dimension(args))]


def _dimension(args: argparse.Namespace) -> int:
    return 1 if args.N is None else args.N


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.command == "verify":
            try:
                points = _points(args)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            inputs = _inputs(args, points[0].N)
            return cmd_verify(
                args.formula, points, inputs, lambda N: _spec(args, N), args.format, args.out, args.jobs
            )
        try:
            params = SelbergParams(parse_complex(args.a), parse_complex(args.b), parse_complex(args.rho), _dimension(args))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        config = RunConfig(
            command=args.command,
            formula=args.formula,
            params=params,
            inputs=_inputs(args, params.N),
            spec=_spec(args, params.N),
            output=args.out,
            format=args.format,
        )
        if args.command == "eval":
            return cmd_eval(config)
        return cmd_sweep(config, args.axis, args.start, args.stop, args.count, args.jobs)
    except UsageError as exc:
        print(f"selberg-schur: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormulaError as exc:
        print(f"selberg-schur: formula error: {exc}", file=sys.stderr)
        return EXIT_FORMULA


__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_FORMULA",
    "EXIT_FAILED",
    "FORMULAS",
    "SUITES",
    "UsageError",
    "FormulaInputs",
    "RunConfig",
    "parse_complex",
    "evaluate",
    "eval_record",
    "render",
    "sweep_rows",
    "verify_records",
    "summary",
    "cmd_eval",
    "cmd_sweep",
    "cmd_verify",
    "build_parser",
    "main",
]
