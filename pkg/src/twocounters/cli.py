"""Command line front end: ``twocounters gen|solve|verify|bench|oracle``."""
from __future__ import annotations

import argparse
import sys

from . import _accel
from .bench import VerificationFailed, format_table, rows_to_csv, run_bench
from .generator import generate_two_counters, roles_from_labels
from .oracle import oracle_solve
from .pgsolver import read_game, serialize_pgsolver
from .solvers import SOLVER_IDS, solve
from .verify import format_solution, parse_solution, verify_solution

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_bits(text: str) -> list:
    """``"3"``, ``"1..10"`` or comma separated mixtures such as ``"1..5,15"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            if not (lo.isdigit() and hi.isdigit()) or int(lo) > int(hi):
                raise UsageError(f"bad bit range {part!r}")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise UsageError(f"bad bit count {part!r}")
    if not out or min(out) < 1:
        raise UsageError("bit counts start at 1")
    return out


def parse_solvers(values) -> list:
    names = [s.strip().lower() for v in values for s in v.split(",") if s.strip()]
    bad = [s for s in names if s not in SOLVER_IDS]
    if bad:
        raise UsageError(f"unknown solver(s): {', '.join(bad)}")
    return names


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def cmd_gen(args):
    tc = generate_two_counters(args.bits)
    sys.stdout.write(serialize_pgsolver(tc.game))
    if args.roles:
        _write(args.roles, tc.roles_text())
    return EXIT_OK


def cmd_solve(args):
    game = read_game(args.file)
    res = solve(game, args.solver, trace=args.trace > 0)
    if args.trace:
        roles = roles_from_labels(game)
        for line in res.trace_lines(roles):
            print(line)
    if args.trace > 1:
        won = res.solution.won_even
        print(f"won by Even: {int(won.sum())} vertices, by Odd: {int((~won).sum())} vertices")
    if args.out:
        _write(args.out, format_solution(res.solution))
    report = verify_solution(game, res.solution)
    if not report.ok:
        print(f"verification failed: {report}", file=sys.stderr)
        return EXIT_INVALID
    print(f"solved with {res.statistic}={res.value}")
    return EXIT_OK


def cmd_verify(args):
    game = read_game(args.game)
    with open(args.solution) as fh:
        solution = parse_solution(fh.read(), game.n)
    report = verify_solution(game, solution)
    print(report)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_bench(args):
    solvers = parse_solvers(args.solvers) if args.solvers else list(SOLVER_IDS)
    bits = parse_bits(args.bits)
    try:
        rows = run_bench(solvers, bits)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(format_table(rows))
    print(f"backend: {_accel.backend_name()}")
    if args.csv:
        _write(args.csv, rows_to_csv(rows))
    return EXIT_OK


def cmd_oracle(args):
    game = read_game(args.file)
    solution = oracle_solve(game)
    sys.stdout.write(format_solution(solution))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twocounters", description="Parity game solvers and the Two Counters family.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write the N-bit Two Counters game in PGSolver format")
    p.add_argument("bits", type=int)
    p.add_argument("--roles", metavar="PATH", help="also write '<id> <player> <bit> <kind>' lines here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve a PGSolver game file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--solver", required=True, type=str.lower, choices=SOLVER_IDS)
    p.add_argument("-t", dest="trace", action="count", default=0, help="trace events; repeat for more")
    p.add_argument("--out", metavar="PATH", help="write the solution here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against a game")
    p.add_argument("game")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="step counts on Two Counters games")
    p.add_argument("--solvers", nargs="+", metavar="ID")
    p.add_argument("--bits", default="1..10", help="e.g. 1..10 or 1..5,15 (default 1..10)")
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force solve a small game")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # malformed games, solutions and parameters all derive from ValueError
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
