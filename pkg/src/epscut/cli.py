"""Command-line front end: solve, compare, and diagnose subcommands.

Exit codes:
  0  run reached a feasible point
  1  configuration error (bad flags, malformed problem file, bad paths)
  2  iteration budget exhausted
  3  zero subgradient or empty cut polyhedron
  4  the problem kind has no analytic sublevel distance (diagnose only)
  5  not enough recorded data to diagnose

All file writes are atomic; identical configurations and seeds produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import diagnostics
from .errors import InsufficientDataError, NotAvailableError
from .problems import (
    Problem,
    problem_from_dict,
    supports_sublevel_distance,
    ball_samples,
)
from .schedule import parse_schedule
from .solver import (
    SolveOptions,
    SolveTrace,
    solve,
    with_baseline,
)
from .traceio import (
    EXIT_CODE_BY_STATUS,
    trace_to_csv,
    trace_to_json,
    write_text_atomic,
)


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's default usage-error exit code collides with the budget
    # exhaustion code; config problems of any kind must map to 1.
    def error(self, message):
        raise _ConfigError(message)


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--problem", required=True, help="problem spec JSON file")
    sub.add_argument("--x0", help="start point, comma separated: 'v1,v2,...'")
    sub.add_argument(
        "--x0-random",
        metavar="SEED:RADIUS",
        help="seeded uniform start in the ball of given radius about the origin",
    )
    sub.add_argument("--eps0", type=float, default=0.1, help="initial shift")
    sub.add_argument(
        "--schedule",
        default="harmonic:p=1",
        help="shift schedule: harmonic:p=P | log | const",
    )
    sub.add_argument("--j-max", type=int, default=8, help="bundle size cap")
    sub.add_argument("--max-iter", type=int, default=1000)
    sub.add_argument(
        "--baseline",
        choices=["none", "zero_eps", "single_cut"],
        default="none",
    )
    sub.add_argument(
        "--fallback",
        choices=["first_cut_only", "fail"],
        default="first_cut_only",
        help="behavior when the cut polyhedron of a step is empty",
    )
    sub.add_argument("--trace-csv", help="write the trace as CSV here")
    sub.add_argument("--trace-json", help="write the trace as JSON here")
    sub.add_argument("--report-json", help="write the command report here")
    sub.add_argument(
        "--record-dist",
        action="store_true",
        help="record the exact sublevel distance per iterate when available",
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="epscut", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("solve", "run the solver and emit its trace"),
        ("compare", "run the solver plus the zero-shift and single-cut baselines"),
        ("diagnose", "run and report decay-rate and error-bound estimates"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        _add_common_flags(sub)
    return parser


def _load_problem(path: str) -> Problem:
    try:
        with open(path) as handle:
            spec = json.load(handle)
    except OSError as exc:
        raise _ConfigError(f"problem file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _ConfigError(f"problem file is not valid JSON: {exc}") from exc
    try:
        return problem_from_dict(spec)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc


def _resolve_x0(args, problem: Problem) -> np.ndarray:
    if (args.x0 is None) == (args.x0_random is None):
        raise _ConfigError("exactly one of --x0 and --x0-random is required")
    if args.x0 is not None:
        try:
            values = [float(part) for part in args.x0.split(",")]
        except ValueError as exc:
            raise _ConfigError(f"--x0: {exc}") from exc
        if len(values) != problem.dim:
            raise _ConfigError(
                f"--x0 has {len(values)} components, problem dim is {problem.dim}"
            )
        return np.asarray(values)
    try:
        seed_text, _, radius_text = args.x0_random.partition(":")
        seed = int(seed_text)
        radius = float(radius_text)
    except ValueError as exc:
        raise _ConfigError(f"--x0-random expects SEED:RADIUS: {exc}") from exc
    if radius <= 0:
        raise _ConfigError("--x0-random radius must be positive")
    rng = np.random.default_rng(seed)
    return radius * ball_samples(rng, 1, problem.dim)[0]


def _build_options(args, record_dist: bool | None = None) -> SolveOptions:
    try:
        schedule = parse_schedule(args.schedule, args.eps0)
        return SolveOptions(
            j_max=args.j_max,
            max_iter=args.max_iter,
            schedule=schedule,
            baseline_mode=args.baseline,
            infeasible_cut_fallback=args.fallback,
            record_sublevel_distance=(
                args.record_dist if record_dist is None else record_dist
            ),
        )
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc


def _write_outputs(args, trace: SolveTrace, report: dict | None = None) -> None:
    try:
        if args.trace_csv:
            write_text_atomic(args.trace_csv, trace_to_csv(trace))
        if args.trace_json:
            write_text_atomic(args.trace_json, trace_to_json(trace))
        if args.report_json and report is not None:
            write_text_atomic(
                args.report_json, json.dumps(report, indent=2) + "\n"
            )
    except OSError as exc:
        raise _ConfigError(f"cannot write output file: {exc}") from exc


def _summary_line(trace: SolveTrace) -> str:
    return (
        f"{trace.status.value} i={trace.status_iteration} "
        f"f={trace.final_f!r}"
    )


def _decay_rho(trace: SolveTrace) -> float | None:
    dist = [
        r.dist_sublevel
        for r in trace.rows
        if r.f_xi > 0.0 and r.dist_sublevel is not None
    ]
    try:
        return diagnostics.fit_decay_rate(dist).rho
    except (InsufficientDataError, ValueError):
        return None


def _variant_record(trace: SolveTrace) -> dict:
    return {
        "status": trace.status.value,
        "iterations": trace.status_iteration,
        "final_f": trace.final_f,
        "decay_rho": _decay_rho(trace),
    }


def cmd_solve(args) -> int:
    problem = _load_problem(args.problem)
    x0 = _resolve_x0(args, problem)
    opts = _build_options(args)
    trace = solve(problem, x0, opts)
    report = {
        "problem": problem.name,
        "status": trace.status.value,
        "iterations": trace.status_iteration,
        "final_f": trace.final_f,
        "strict_feasible": trace.strict_feasible,
    }
    _write_outputs(args, trace, report)
    print(_summary_line(trace))
    return EXIT_CODE_BY_STATUS[trace.status]


def cmd_compare(args) -> int:
    problem = _load_problem(args.problem)
    x0 = _resolve_x0(args, problem)
    record = supports_sublevel_distance(problem)
    opts = _build_options(args, record_dist=record)

    traces = {"main": solve(problem, x0, opts)}
    for baseline in ("zero_eps", "single_cut"):
        traces[baseline] = solve(problem, x0, with_baseline(opts, baseline))

    report = {
        "problem": problem.name,
        "x0": [float(v) for v in x0],
        "variants": {name: _variant_record(t) for name, t in traces.items()},
    }
    _write_outputs(args, traces["main"], report)
    for name, trace in traces.items():
        print(f"{name}: {_summary_line(trace)}")
    return EXIT_CODE_BY_STATUS[traces["main"].status]


def cmd_diagnose(args) -> int:
    problem = _load_problem(args.problem)
    if not supports_sublevel_distance(problem):
        print(
            f"diagnose: problem kind {problem.kind!r} has no analytic "
            "sublevel distance",
            file=sys.stderr,
        )
        return 4
    x0 = _resolve_x0(args, problem)
    opts = _build_options(args, record_dist=True)
    trace = solve(problem, x0, opts)
    try:
        contrast = diagnostics.claim_contrast(trace)
    except InsufficientDataError as exc:
        _write_outputs(args, trace)
        print(f"diagnose: {exc}", file=sys.stderr)
        return 5
    points = [trace.iterates[r.i] for r in trace.rows if r.f_xi > 0.0]
    try:
        kappa_hat = diagnostics.estimate_kappa(problem, points, eps=0.0)
    except (NotAvailableError, ValueError) as exc:
        # Unreachable for supported kinds; keep the report honest anyway.
        print(f"diagnose: kappa estimate failed: {exc}", file=sys.stderr)
        kappa_hat = None
    report = {
        "problem": problem.name,
        "status": trace.status.value,
        "iterations": trace.status_iteration,
        "final_f": trace.final_f,
        "kappa_hat": kappa_hat,
        "contrast": contrast.to_dict(),
    }
    _write_outputs(args, trace, report)
    print(_summary_line(trace))
    print(contrast.verdict)
    return EXIT_CODE_BY_STATUS[trace.status]


_COMMANDS = {"solve": cmd_solve, "compare": cmd_compare, "diagnose": cmd_diagnose}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
