"""``mindswap`` command line.

Exit codes: 0 success/restored, 1 usage or parse error, 2 constraint
violation (reused pair, plan that does not restore, formula mismatch),
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import machine, oracle, solver
from .errors import (
    MindswapError,
    NeedHelpersError,
    PairReusedError,
    ParseError,
    SearchBudgetExceededError,
)
from .logfile import read_swap_log
from .perm import (
    Permutation,
    SwapSequence,
    decompose,
    format_cycles,
    parity,
    parse_cycles,
)
from .solver import Mode

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3

EXHAUSTIVE_LIMIT = 6


class CLIError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


def _parse_helpers(text: str) -> list[int]:
    try:
        helpers = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"helpers must be integers: {text!r}") from None
    if any(h < 1 for h in helpers):
        raise argparse.ArgumentTypeError("helpers must be positive")
    return helpers


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mindswap",
        description="Minimal restoration plans for a mind-switch machine that never reuses a pair.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="cycle decomposition, (n, m, r) and parity")
    p.add_argument("source", help="cycle notation such as '(12)(345)', or a swap log file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("plan", help="minimum-length restoration plan")
    p.add_argument("source", help="swap log file, or cycle notation of the scrambled state")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None,
                   help="default: history for a log, theorem for cycle notation")
    p.add_argument("--helpers", type=_parse_helpers, default=None,
                   help="comma-separated outside bodies, e.g. 3,4")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("certify", help="check the closed-form minimum against brute force")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--samples", type=int, default=None,
                   help=f"random permutations to check; required above n-max {EXHAUSTIVE_LIMIT}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extra-labels", type=int, default=0,
                   help="widen every search universe by this many outside labels")
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("simulate", help="replay a log then a plan on the machine")
    p.add_argument("log")
    p.add_argument("plan")
    p.add_argument("--json", action="store_true")
    return parser


def _is_cycle_notation(source: str) -> bool:
    return source.lstrip().startswith("(")


def _load_log(path: str) -> tuple[SwapSequence, list[int]]:
    try:
        return read_swap_log(path)
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None


def _load_source(source: str) -> tuple[Permutation, SwapSequence | None]:
    if _is_cycle_notation(source):
        return parse_cycles(source), None
    log, _ = _load_log(source)
    return log.product(), log


def cmd_decompose(args) -> int:
    p, _ = _load_source(args.source)
    d = decompose(p)
    par = parity(p).value
    if args.json:
        _emit({
            "cycles": [list(c) for c in d.cycles],
            "notation": format_cycles(d),
            "n": d.n, "m": d.m, "r": d.r,
            "parity": par,
        })
    else:
        print(f"{format_cycles(d)}  n={d.n} m={d.m} r={d.r} parity={par}")
    return EXIT_OK


def cmd_plan(args) -> int:
    p, log = _load_source(args.source)
    if args.mode is None:
        mode = Mode.HISTORY if log is not None else Mode.THEOREM
    else:
        mode = Mode(args.mode)

    if log is not None:
        try:
            state = machine.replay(log)
        except PairReusedError as exc:
            raise CLIError(f"log reuses {exc.pair} at swap #{exc.index + 1}", EXIT_VIOLATION) from None
    else:
        state = machine.state_for_permutation(p)

    d = decompose(p)
    if d.is_empty():
        report = {"n": 0, "m": 0, "r": 0, "M": 0, "classic_min": 0, "plan": [],
                  "helpers": [], "mode": mode.value, "restored": True,
                  "status": "already restored"}
        if args.json:
            _emit(report)
        else:
            print("already restored: the swaps multiply to the identity")
        return EXIT_OK

    budget = solver.min_undo_count(d)
    if args.helpers is not None:
        helpers = args.helpers
    elif mode is Mode.HISTORY:
        # bodies already in the log have spent pairs; fresh ones are more useful
        helpers = solver.default_helpers(set(p.support) | state.roster)
    else:
        helpers = solver.default_helpers(p.support)
    if mode is Mode.THEOREM:
        plan = solver.theorem_plan(p, helpers)
    else:
        plan = solver.history_plan(p, state.used_pairs, helpers, max_depth=args.max_depth)

    verdict = machine.validate_plan(state, plan)
    plan_labels = {x for t in plan for x in t}
    used_helpers = sorted(plan_labels - set(p.support))
    report = {
        "n": d.n, "m": d.m, "r": d.r,
        "M": budget.M,
        "classic_min": solver.classic_min_count(d),
        "plan": plan.to_lists(),
        "helpers": used_helpers,
        "mode": mode.value,
        "restored": verdict.restored,
        "valid": verdict.valid,
        "violations": verdict.to_json()["violations"],
    }
    if args.json:
        _emit(report)
    else:
        print(f"P = {format_cycles(d)}  n={d.n} m={d.m} r={d.r}")
        print(f"M = {budget.M}  (without the pair restrictions: {report['classic_min']})")
        print(f"mode: {mode.value}")
        if used_helpers:
            print("helper bodies: " + ", ".join(map(str, used_helpers)))
        print(f"plan ({len(plan)} swaps, in order):")
        for i, t in enumerate(plan, start=1):
            print(f"  {i:>3}. {t.a} {t.b}")
        print(_verdict_line(verdict))
    if not verdict.valid:
        if verdict.violations and mode is Mode.THEOREM:
            print("plan reuses a pair from the log; try --mode history", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _verdict_line(v: machine.Verdict) -> str:
    parts = ["restored" if v.restored else "NOT restored"]
    parts.append("no pair reused" if v.fresh else f"{len(v.violations)} reused pair(s)")
    if v.budget:
        if v.length == v.budget:
            parts.append(f"length {v.length} = M")
        else:
            parts.append(f"length {v.length}, M={v.budget}")
    return "verdict: " + ", ".join(parts)


def cmd_certify(args) -> int:
    if args.n_max < 1:
        raise CLIError("--n-max must be positive")
    samples = args.samples
    if args.n_max > EXHAUSTIVE_LIMIT and samples is None:
        samples = 200
    if args.n_max > oracle.DEFAULT_UNIVERSE_CAP:
        raise CLIError(f"--n-max above {oracle.DEFAULT_UNIVERSE_CAP} is beyond the search cap")
    report = oracle.certify_formula(
        args.n_max,
        samples=samples,
        seed=args.seed,
        extra_labels=args.extra_labels,
        time_budget=args.time_budget,
        workers=args.workers,
    )
    if args.json:
        _emit(report.to_json())
    else:
        print(report.summary())
        helper_cases = [c for c in report.cases if c.nmr[0] == 2]
        if helper_cases:
            c = helper_cases[0]
            print(f"n=2 case {format_cycles(c.target)} with 2 helpers: minimum {c.found}")
        for c in report.mismatches:
            print(f"MISMATCH {format_cycles(c.target)} nmr={c.nmr}: "
                  f"expected {c.expected}, found {c.found}")
    if report.mismatches:
        return EXIT_VIOLATION
    if report.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_simulate(args) -> int:
    log, log_lines = _load_log(args.log)
    plan, plan_lines = _load_log(args.plan)
    try:
        state = machine.replay(log)
    except PairReusedError as exc:
        line = log_lines[exc.index]
        raise CLIError(
            f"{args.log}:{line}: pair ({exc.pair.a} {exc.pair.b}) reused in the log",
            EXIT_VIOLATION,
        ) from None
    verdict = machine.validate_plan(state, plan)
    report = verdict.to_json()
    report["total_swaps"] = len(log) + len(plan)
    for v in report["violations"]:
        v["line"] = plan_lines[v["index"]]
    if args.json:
        _emit(report)
    else:
        for v in report["violations"]:
            a, b = v["pair"]
            print(f"{args.plan}:{v['line']}: pair ({a} {b}) was already used", file=sys.stderr)
        print(_verdict_line(verdict) + f", {report['total_swaps']} swaps in total")
    return EXIT_OK if verdict.valid else EXIT_VIOLATION


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


COMMANDS = {
    "decompose": cmd_decompose,
    "plan": cmd_plan,
    "certify": cmd_certify,
    "simulate": cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CLIError as exc:
        print(f"mindswap: {exc}", file=sys.stderr)
        return exc.exit_code
    except SearchBudgetExceededError as exc:
        print(f"mindswap: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NeedHelpersError as exc:
        print(f"mindswap: {exc}; pass --helpers", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"mindswap: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MindswapError as exc:
        print(f"mindswap: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
