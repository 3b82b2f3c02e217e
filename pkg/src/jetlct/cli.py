"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 budget exceeded,
3 a verification check failed.  Errors go to standard error as one line of
JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .fporacle import CountCapExceeded, OracleDisagreement, count_points, oracle_dimension
from .groebner import Budget, BudgetExceeded, MonomialOrder, VariableCapExceeded, krull_dimension
from .jets import jet_ideal
from .lctlab import (
    check_fiber_bound,
    check_isom_fiber,
    check_recursion,
    check_semicontinuity,
    detect_ruling,
    equality_characterization,
    is_singular_point,
    lct_estimate,
    verify_lower_bound,
)
from .polyring import ParseError, parse_poly

__all__ = ["RunConfig", "UsageError", "run", "main", "build_parser"]

COMMANDS = ("jets", "dim", "lct", "verify", "ruling", "count")
SUITES = ("main1", "isom", "recursion", "fiber", "semicont", "main2")

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3

# flags accepted by each command on top of --poly, --n, --format and the budget flags
_ALLOWED = {
    "jets": {"level"},
    "dim": {"level", "order"},
    "lct": {"max_k"},
    "verify": {"suite", "level", "max_k", "points"},
    "ruling": set(),
    "count": {"level", "prime"},
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    poly: str
    n: int
    level: Optional[int] = None
    max_k: Optional[int] = None
    prime: Optional[int] = None
    order: Optional[str] = None
    format: str = "text"
    budget_steps: Optional[int] = None
    timeout_ms: Optional[int] = None
    seed: Optional[int] = None
    suite: Optional[str] = None
    points: tuple = field(default=())

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n is None or self.n < 1:
            raise UsageError("--n must be a positive integer")
        if self.format not in ("text", "json"):
            raise UsageError("--format must be text or json")
        given = {name for name in ("level", "max_k", "prime", "order", "suite")
                 if getattr(self, name) is not None}
        if self.points:
            given.add("points")
        extra = given - _ALLOWED[self.command]
        if extra:
            flags = ", ".join("--" + f.replace("_", "-") for f in sorted(extra))
            raise UsageError(f"{flags} not accepted by the {self.command} command")
        if self.level is not None and self.level < 0:
            raise UsageError("--level must be >= 0")
        if self.max_k is not None and self.max_k < 1:
            raise UsageError("--max-k must be >= 1")
        if self.order is not None and self.order not in ("grevlex", "lex"):
            raise UsageError("--order must be grevlex or lex")
        if self.suite is not None and self.suite not in SUITES:
            raise UsageError(f"--suite must be one of {'|'.join(SUITES)}")
        if self.budget_steps is not None and self.budget_steps < 1:
            raise UsageError("--budget-steps must be positive")
        if self.timeout_ms is not None and self.timeout_ms < 1:
            raise UsageError("--timeout-ms must be positive")
        if self.prime is not None and self.prime < 2:
            raise UsageError("--prime must be a prime number")

    def budget(self) -> Budget:
        base = Budget.default()
        steps = self.budget_steps if self.budget_steps is not None else base.steps
        timeout = self.timeout_ms / 1000 if self.timeout_ms is not None else base.timeout
        return Budget(steps=steps, timeout=timeout, variable_cap=base.variable_cap)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jetlct", description="Jet schemes and log canonical thresholds of hypersurfaces.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--poly", required=True, help="polynomial in x1..xn, e.g. 'x1^3+x2^3'")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--level", type=int, help="jet level m")
    p.add_argument("--max-k", type=int, dest="max_k", help="number of sampled levels for lct")
    p.add_argument("--prime", type=int, help="prime for point counts")
    p.add_argument("--order", choices=("grevlex", "lex"), help="monomial order for dim")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget-steps", type=int, dest="budget_steps")
    p.add_argument("--timeout-ms", type=int, dest="timeout_ms")
    p.add_argument("--seed", type=int)
    p.add_argument("--suite", choices=SUITES, help="verification suite for verify")
    p.add_argument("--point", action="append", dest="points", default=[],
                   help="comma-separated rational point, e.g. 0,0,1 (verify fiber/semicont)")
    return p


def _parse_point(text: str, n: int) -> tuple:
    try:
        coords = tuple(Fraction(c.strip()) for c in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read point {text!r}") from None
    if len(coords) != n:
        raise UsageError(f"point {text!r} has {len(coords)} coordinates, expected {n}")
    return coords


def config_from_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    points = tuple(_parse_point(t, ns.n) for t in ns.points) if ns.n and ns.n > 0 else ()
    return RunConfig(ns.command, ns.poly, ns.n, ns.level, ns.max_k, ns.prime, ns.order, ns.format,
                     ns.budget_steps, ns.timeout_ms, ns.seed, ns.suite, points)


def _emit(config: RunConfig, payload: dict, lines: list, out) -> None:
    if config.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _fail(err, kind: str, message: str, code: int, **extra) -> int:
    err.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")
    return code


def _header(config: RunConfig) -> dict:
    return {"command": config.command, "input": config.poly, "n": config.n}


def _cmd_jets(config, F, budget, out) -> int:
    m = 1 if config.level is None else config.level
    ideal = jet_ideal(F, m)
    gens = [str(g) for g in ideal.generators]
    payload = {**_header(config), "level": m, "generators": gens}
    _emit(config, payload, gens, out)
    return EXIT_OK


def _cmd_dim(config, F, budget, out) -> int:
    m = 0 if config.level is None else config.level
    ideal = jet_ideal(F, m)
    kind = config.order or "grevlex"
    dim = krull_dimension(ideal, MonomialOrder(kind, ideal.variables), budget)
    payload = {**_header(config), "level": m, "order": kind, "num_vars": ideal.num_vars, "dim": dim}
    _emit(config, payload, [f"dim Z_{m} = {dim} ({ideal.num_vars} variables, {kind})"], out)
    return EXIT_OK


def _report_lines(report) -> list:
    yes = {True: "yes", False: "no"}
    lines = [f"input: {report.input}",
             f"n = {report.n}, d = {report.d}, homogeneous: {yes[report.homogeneous]}, r = {report.r}",
             "m\tdim Z_m\tdim fiber over 0"]
    for row in report.dim_table:
        show = lambda v: "-" if v is None else str(v)
        tail = f"\t{row.note}" if row.note else ""
        lines.append(f"{row.m}\t{show(row.dim_jets)}\t{show(row.dim_fiber0)}{tail}")
    lines.append(f"upper bound: {report.upper_bound if report.upper_bound is not None else '-'}")
    lines.append(f"lower bound: {report.lower_bound if report.lower_bound is not None else '-'}")
    lines.append(f"exact: {yes[report.exact]}")
    if report.ruling is not None:
        lines.append(f"ruling dimension: {report.ruling.r_prime}")
    lines += [f"note: {note}" for note in report.notes]
    lines += [_verdict_line(v) for v in report.verdicts]
    return lines


def _verdict_line(v) -> str:
    status = "N/A" if not v.applicable else ("PASS" if v.passed else "FAIL")
    return f"{status} {v.name}: {v.detail}"


def _cmd_lct(config, F, budget, out) -> int:
    report = lct_estimate(F, config.max_k or 2, budget=budget, source=config.poly)
    payload = report.to_dict()
    _emit(config, payload, _report_lines(report), out)
    if any(not v.passed for v in report.verdicts):
        return EXIT_VERIFY
    if any(not row.complete for row in report.dim_table):
        return EXIT_BUDGET
    return EXIT_OK


def _default_level(F) -> int:
    return max(F.total_degree - 1, 0)


def _cmd_verify(config, F, budget, out) -> int:
    suite = config.suite or "main1"
    m = config.level if config.level is not None else _default_level(F)
    max_k = config.max_k or 2
    origin = (0,) * F.n
    if suite == "main1":
        if not F.is_homogeneous():
            raise UsageError("verify main1 requires a homogeneous polynomial")
        report = lct_estimate(F, max_k, budget=budget, source=config.poly)
        verdicts = [verify_lower_bound(F, report)]
    elif suite == "isom":
        verdicts = [check_isom_fiber(F, m, budget=budget)]
    elif suite == "recursion":
        verdicts = [check_recursion(F, m, budget=budget)]
    elif suite == "fiber":
        verdicts = [check_fiber_bound(F, x, m, budget) for x in (config.points or (origin,))]
    elif suite == "semicont":
        points = config.points
        if not points:
            # translation directions of a cone usually lie in its singular locus
            candidates = (origin,) + detect_ruling(F).basis
            points = tuple(x for x in candidates if is_singular_point(F, x))
        verdicts = [check_semicontinuity(F, m, points, budget)]
    else:
        verdicts = [equality_characterization(F, max_k, budget=budget)]
    payload = {**_header(config), "suite": suite, "level": m if suite not in ("main1", "main2") else None,
               "verdicts": [v.to_dict() for v in verdicts],
               "passed": all(v.passed for v in verdicts)}
    _emit(config, payload, [_verdict_line(v) for v in verdicts], out)
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_VERIFY


def _cmd_ruling(config, F, budget, out) -> int:
    ruling = detect_ruling(F)
    payload = {**_header(config), "ruling": ruling.to_dict()}
    basis = "; ".join("(" + ", ".join(map(str, v)) + ")" for v in ruling.basis) or "none"
    lines = [f"ruling dimension: {ruling.r_prime}", f"basis: {basis}",
             f"reduced polynomial: {ruling.reduced_poly} in {ruling.reduced_poly.n} variables"]
    _emit(config, payload, lines, out)
    return EXIT_OK


def _cmd_count(config, F, budget, out) -> int:
    m = 0 if config.level is None else config.level
    ideal = jet_ideal(F, m)
    if config.prime is not None:
        rec = count_points(ideal, config.prime)
        payload = {**_header(config), "level": m, "prime": rec.prime, "num_vars": rec.num_vars,
                   "count": rec.count, "log_slope": rec.log_slope}
        lines = [f"p = {rec.prime}: {rec.count} points in {rec.num_vars} variables, "
                 f"rounded log_p = {rec.log_slope}"]
    else:
        estimate, records = oracle_dimension(ideal)
        payload = {**_header(config), "level": m, "estimate": estimate,
                   "counts": [{"prime": r.prime, "count": r.count, "log_slope": r.log_slope,
                               "agreed": r.agreed} for r in records]}
        lines = [f"p = {r.prime}: {r.count} points, rounded log_p = {r.log_slope}" for r in records]
        lines.append(f"dimension estimate: {'inconclusive' if estimate is None else estimate}")
    _emit(config, payload, lines, out)
    return EXIT_OK


_DISPATCH = {
    "jets": _cmd_jets,
    "dim": _cmd_dim,
    "lct": _cmd_lct,
    "verify": _cmd_verify,
    "ruling": _cmd_ruling,
    "count": _cmd_count,
}


def run(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config.validate()
        F = parse_poly(config.poly, config.n)
        if F.is_zero():
            raise UsageError("the zero polynomial defines no hypersurface")
        return _DISPATCH[config.command](config, F, config.budget(), out)
    except ParseError as exc:
        return _fail(err, "parse", str(exc), EXIT_USAGE, position=exc.position)
    except UsageError as exc:
        return _fail(err, "usage", str(exc), EXIT_USAGE)
    except (BudgetExceeded, VariableCapExceeded, CountCapExceeded) as exc:
        return _fail(err, "budget", str(exc), EXIT_BUDGET)
    except OracleDisagreement as exc:
        return _fail(err, "oracle", str(exc), EXIT_VERIFY)
    except ValueError as exc:
        return _fail(err, "usage", str(exc), EXIT_USAGE)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        config = config_from_args(argv)
    except UsageError as exc:
        return _fail(sys.stderr, "usage", str(exc), EXIT_USAGE)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
