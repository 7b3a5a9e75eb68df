"""Command-line front end: ``mspecial {eval, table, verify, reductions}``.

Exit codes: 0 on success, 1 when an evaluation fails or an identity does
not hold, 2 for usage errors (bad flags or arguments outside a function's
domain).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field

from .config import ENV_REL_TOL, Tolerances, tolerances
from .errors import DomainError, MSpecialError
from .modfun import (
    BETA_REPRESENTATIONS,
    CONFLUENT_REPRESENTATIONS,
    GAUSS_REPRESENTATIONS,
    ModifiedFunctionRequest,
)
from .mseries import ParameterSet, m_series
from .reductions import FAMILIES, list_cases, run_reduction
from .results import EvalResult
from .suites import ALL_THEOREMS, verification_cases
from .transforms import fuzz_parameter_sets

SCHEMA_VERSION = 1
FORMATS = ("plain", "csv", "json")
FUNCTIONS = ("m_series", "m_gamma", "m_beta", "m_gauss", "m_confluent")
ARGUMENTS = {
    "m_series": ("z",),
    "m_gamma": ("x",),
    "m_beta": ("x", "y"),
    "m_gauss": ("l1", "l2", "l3", "z"),
    "m_confluent": ("l2", "l3", "z"),
}
RESULT_FIELDS = (
    "value",
    "abs_error_estimate",
    "converged",
    "precision_tier",
    "method",
    "terms_used",
    "nodes_evaluated",
    "max_term_magnitude",
)
PRESETS = dict(fuzz_parameter_sets())


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    """Validated command-line inputs."""

    subcommand: str
    output_format: str = "plain"
    function: str | None = None
    params: ParameterSet | None = None
    arguments: dict = field(default_factory=dict)
    rho: float = 0.0
    representation: str = "default"
    eval_tol: float | None = None
    sweeps: tuple = ()
    theorems: tuple | None = None
    seed: int | None = None
    family: str | None = None
    rel_tol: float | None = None
    table: Tolerances = field(default_factory=Tolerances)


# ---------------------------------------------------------------- parsing


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not (math.isfinite(value) and value > 0.0):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text!r}")
    return value


def _sweep(text: str) -> tuple[str, tuple[float, ...]]:
    """``name=start:stop:step``, stop included."""
    try:
        name, spec = text.split("=", 1)
        start, stop, step = (float(v) for v in spec.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected name=start:stop:step, got {text!r}") from exc
    if not (step > 0.0 and stop >= start):
        raise argparse.ArgumentTypeError(f"need step > 0 and stop >= start in {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return name.strip(), tuple(start + i * step for i in range(count))


def _add_kernel_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("kernel parameters (default: classical)")
    g.add_argument("--classical", action="store_true", help="κ = μ = 1, α = β = 1 (the exp kernel)")
    g.add_argument("--set", choices=sorted(PRESETS), help="a named parameter set from the fuzz grid")
    g.add_argument("--upper", type=float, nargs="*", help="upper parameters κ")
    g.add_argument("--lower", type=float, nargs="*", help="lower parameters μ")
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--beta", type=float, default=1.0)


def _add_argument_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("function arguments")
    g.add_argument("-x", type=float)
    g.add_argument("-y", type=float)
    g.add_argument("--l1", type=float, help="λ₁")
    g.add_argument("--l2", type=float, help="λ₂")
    g.add_argument("--l3", type=float, help="λ₃")
    g.add_argument("-z", type=float)
    g.add_argument("--rho", type=float, default=0.0)
    g.add_argument("--representation", default="default")
    g.add_argument("--tol", type=_positive_float, help="requested accuracy of each evaluation")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="plain", dest="output_format")
    p.add_argument(
        "--rel-tol",
        type=_positive_float,
        help=f"relative tolerance of identity checks (overrides ${ENV_REL_TOL})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mspecial", description="Modified gamma, beta and hypergeometric functions.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eval", help="evaluate one function at one point")
    p.add_argument("function", choices=FUNCTIONS)
    _add_kernel_flags(p)
    _add_argument_flags(p)
    _add_common(p)

    p = sub.add_parser("table", help="evaluate a function over a grid")
    p.add_argument("function", choices=FUNCTIONS)
    p.add_argument(
        "--vary", type=_sweep, action="append", required=True, metavar="NAME=START:STOP:STEP",
        help="swept argument; repeat for a product grid (first flag varies slowest)",
    )
    _add_kernel_flags(p)
    _add_argument_flags(p)
    _add_common(p)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--theorem", action="append", choices=ALL_THEOREMS, help="restrict to one identity (repeatable)")
    p.add_argument("--seed", type=int, help="draw the base arguments of the transform grid at random")
    _add_common(p)

    p = sub.add_parser("reductions", help="run the reduction catalog")
    p.add_argument("--family", help=f"one of {', '.join(FAMILIES)}")
    _add_common(p)
    return parser


def _kernel(ns: argparse.Namespace) -> ParameterSet:
    chosen = sum(bool(v) for v in (ns.classical, ns.set, ns.upper is not None or ns.lower is not None))
    if chosen > 1:
        raise UsageError("use only one of --classical, --set and --upper/--lower")
    if ns.set:
        return PRESETS[ns.set]
    if ns.upper is None and ns.lower is None:
        return ParameterSet.classical()
    return ParameterSet(tuple(ns.upper or ()), tuple(ns.lower or ()), ns.alpha, ns.beta)


def _representations(function: str) -> tuple[str, ...]:
    return {
        "m_beta": BETA_REPRESENTATIONS,
        "m_gauss": GAUSS_REPRESENTATIONS,
        "m_confluent": CONFLUENT_REPRESENTATIONS,
    }.get(function, ("default",))


def parse_config(argv: list[str] | None = None) -> CliConfig:
    """Parse and validate; raises ``SystemExit(2)`` on bad flags and UsageError on bad values."""
    ns = build_parser().parse_args(argv)
    table = tolerances()
    if ns.rel_tol is not None:
        table = table.with_check_rel(ns.rel_tol)
    cfg = CliConfig(ns.subcommand, ns.output_format, rel_tol=ns.rel_tol, table=table)
    if ns.subcommand in ("eval", "table"):
        cfg.function = ns.function
        try:
            cfg.params = _kernel(ns)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        cfg.rho = ns.rho
        cfg.eval_tol = ns.tol
        if ns.representation not in _representations(ns.function):
            raise UsageError(
                f"{ns.function} has representations {_representations(ns.function)}, got {ns.representation!r}"
            )
        cfg.representation = ns.representation
        swept = dict(ns.vary) if ns.subcommand == "table" else {}
        names = ARGUMENTS[ns.function] + ("rho",)
        for name in swept:
            if name not in names:
                raise UsageError(f"{ns.function} has no argument {name!r} to vary; choose from {names}")
        for name in ARGUMENTS[ns.function]:
            value = getattr(ns, name)
            if value is None and name not in swept:
                raise UsageError(f"{ns.function} needs {_flag(name)}")
            if value is not None:
                cfg.arguments[name] = value
        cfg.sweeps = tuple(ns.vary) if ns.subcommand == "table" else ()
    elif ns.subcommand == "verify":
        cfg.theorems = tuple(ns.theorem) if ns.theorem else None
        cfg.seed = ns.seed
    else:
        if ns.family is not None and ns.family not in FAMILIES:
            raise UsageError(f"unknown family {ns.family!r}; choose from {', '.join(FAMILIES)}")
        cfg.family = ns.family
    return cfg


def _flag(name: str) -> str:
    return f"-{name}" if len(name) == 1 else f"--{name}"


# ---------------------------------------------------------------- evaluation


def evaluate(cfg: CliConfig, arguments: dict, rho: float) -> EvalResult:
    if cfg.function == "m_series":
        if cfg.eval_tol is None:
            return m_series(cfg.params, arguments["z"])
        return m_series(cfg.params, arguments["z"], cfg.eval_tol)
    request = ModifiedFunctionRequest(
        cfg.function,
        cfg.params,
        tuple(arguments.items()),
        rho,
        cfg.representation,
        cfg.table.eval_tol if cfg.eval_tol is None else cfg.eval_tol,
    )
    return request.evaluate()


def _clean(value):
    """JSON-safe copy: non-finite floats become null."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _json(command: str, inputs: dict, results: list) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "results": results}
    return json.dumps(_clean(doc), indent=2, sort_keys=False, allow_nan=False)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _kernel_inputs(cfg: CliConfig) -> dict:
    return {
        "function": cfg.function,
        "params": cfg.params.to_record(),
        "representation": cfg.representation,
        "tol": cfg.eval_tol,
    }


def cmd_eval(cfg: CliConfig, out) -> int:
    inputs = dict(_kernel_inputs(cfg), arguments=dict(cfg.arguments))
    if cfg.function != "m_series":
        inputs["arguments"]["rho"] = cfg.rho
    try:
        res = evaluate(cfg, cfg.arguments, cfg.rho)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    except MSpecialError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    record = res.to_record()
    if cfg.output_format == "json":
        print(_json("eval", inputs, [record]), file=out)
    elif cfg.output_format == "csv":
        print(_csv(list(RESULT_FIELDS), [[_fmt(record[k]) for k in RESULT_FIELDS]]), file=out)
    else:
        print(f"{res.value:.12g}", file=out)
        for key in RESULT_FIELDS[1:]:
            print(f"  {key}: {_fmt(record[key])}", file=out)
    return 0 if res.converged else 1


def cmd_table(cfg: CliConfig, out) -> int:
    names = [name for name, _ in cfg.sweeps]
    columns = names + [n for n in ARGUMENTS[cfg.function] + ("rho",) if n not in names]
    if cfg.function == "m_series":
        columns = [c for c in columns if c != "rho"]
    rows = []
    failed = False
    for combo in itertools.product(*(values for _, values in cfg.sweeps)):
        point = dict(cfg.arguments, rho=cfg.rho)
        point.update(zip(names, combo))
        rho = point.pop("rho")
        row = {c: (rho if c == "rho" else point[c]) for c in columns}
        try:
            res = evaluate(cfg, point, rho)
            row.update(res.to_record())
            row["error"] = ""
            failed = failed or not res.converged
        except MSpecialError as exc:
            row.update({k: None for k in RESULT_FIELDS})
            row["error"] = f"{type(exc).__name__}: {exc}"
            failed = True
        rows.append(row)
    header = columns + list(RESULT_FIELDS) + ["error"]
    if cfg.output_format == "json":
        inputs = dict(_kernel_inputs(cfg), fixed=dict(cfg.arguments, rho=cfg.rho), vary=dict(cfg.sweeps))
        print(_json("table", inputs, [{k: row[k] for k in header} for row in rows]), file=out)
    elif cfg.output_format == "csv":
        print(_csv(header, [["" if row[k] is None else _fmt(row[k]) for k in header] for row in rows]), file=out)
    else:
        for row in rows:
            args = " ".join(f"{c}={_fmt(row[c])}" for c in columns)
            if row["error"]:
                print(f"{args}  ERROR {row['error']}", file=out)
            else:
                print(f"{args}  value={row['value']!r} err={row['abs_error_estimate']:.3g}", file=out)
    return 1 if failed else 0


def _inputs_text(inputs: dict) -> str:
    return " ".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in inputs.items() if k != "params")


def _report_lines(reports, out, output_format: str, command: str, inputs: dict) -> None:
    records = [r.to_record() for r in reports]
    if output_format == "json":
        print(_json(command, inputs, records), file=out)
        return
    if output_format == "csv":
        header = ["theorem_id", "status", "inputs", "lhs", "rhs", "abs_diff", "rel_diff", "tolerance_used", "cause"]
        rows = []
        for r in reports:
            rows.append([
                r.theorem_id,
                r.status,
                json.dumps(_clean(r.inputs), separators=(",", ":")),
                "" if r.lhs is None else _fmt(r.lhs.value),
                "" if r.rhs is None else _fmt(r.rhs.value),
                _fmt(r.abs_diff),
                _fmt(r.rel_diff),
                _fmt(r.tolerance_used),
                r.cause or "",
            ])
        print(_csv(header, rows), file=out)
        return
    for r in reports:
        line = f"{r.status:<7} {r.theorem_id}  {_inputs_text(r.inputs)}"
        if not r.skipped and r.lhs is not None:
            line += f"  lhs={r.lhs.value!r} rhs={r.rhs.value!r} diff={r.abs_diff:.3g} tol={r.tolerance_used:.3g}"
        if r.cause:
            line += f"  [{r.cause}]"
        print(line, file=out)


def _summary(reports, out, output_format: str) -> None:
    if output_format != "plain":
        return
    counts = {s: sum(r.status == s for r in reports) for s in ("PASS", "FAIL", "SKIPPED")}
    by_theorem: dict[str, list[int]] = {}
    for r in reports:
        tally = by_theorem.setdefault(r.theorem_id, [0, 0, 0])
        tally[("PASS", "FAIL", "SKIPPED").index(r.status)] += 1
    print("", file=out)
    for theorem, (p, f, s) in by_theorem.items():
        extra = f", {s} skipped" if s else ""
        print(f"  {theorem:<40} {p} passed, {f} failed{extra}", file=out)
    print(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIPPED']} skipped", file=out)


def cmd_verify(cfg: CliConfig, out) -> int:
    try:
        cases = verification_cases(cfg.theorems, cfg.seed)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    reports = [case.run(cfg.table) for case in cases]
    inputs = {
        "theorems": list(cfg.theorems) if cfg.theorems else "all",
        "seed": cfg.seed,
        "check_rel": cfg.table.check_rel,
    }
    _report_lines(reports, out, cfg.output_format, "verify", inputs)
    _summary(reports, out, cfg.output_format)
    return 0 if all(r.passed for r in reports) else 1


def cmd_reductions(cfg: CliConfig, out) -> int:
    reports = []
    for case in list_cases(cfg.family):
        reports.extend(run_reduction(case, tol=cfg.rel_tol, table=cfg.table))
    inputs = {"family": cfg.family or "all"}
    _report_lines(reports, out, cfg.output_format, "reductions", inputs)
    _summary(reports, out, cfg.output_format)
    return 0 if all(r.passed or r.skipped for r in reports) else 1


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify, "reductions": cmd_reductions}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.subcommand](cfg, out)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
