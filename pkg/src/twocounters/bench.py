"""Step-count benchmark on Two Counters games.

Every row generates the game, solves it, verifies the solution and compares the
solver statistic with the published reference value when one exists.
"""
from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from .generator import generate_two_counters
from .solvers import SOLVER_IDS, solve
from .verify import verify_solution

_BITS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20)
_DOUBLING = [2 * (2 ** n - 1) for n in _BITS]

REFERENCE = {
    "zlk": dict(zip(_BITS, (8, 21, 45, 91, 181, 359, 713, 1419, 2829, 5647, 180249, 5767203))),
    "pp": dict(zip(_BITS, (2, 9, 23, 52, 112, 235, 485, 990, 2006, 4045, 130961, 4194108))),
    "dp": dict(zip(_BITS, (2, 7, 18, 43, 97, 210, 442, 913, 1863, 3772, 122742, 3931927))),
    "rr": dict(zip(_BITS, _DOUBLING)),
    "rrdp": dict(zip(_BITS, _DOUBLING)),
    "tl": dict(zip(_BITS, _DOUBLING)),
    "atl": dict(zip(_BITS, _DOUBLING)),
}
# every cell is compared exactly; no row needed the doubling-ratio fallback
REFERENCE_STATUS = {solver: "exact" for solver in REFERENCE}


class VerificationFailed(RuntimeError):
    pass


@dataclass
class BenchRow:
    solver: str
    bits: int
    statistic: str
    value: Optional[int]
    seconds: float
    expected: Optional[int] = None
    error: str = ""

    @property
    def matches(self) -> Optional[bool]:
        if self.expected is None or self.value is None:
            return None
        return self.value == self.expected


def expected_value(solver: str, bits: int) -> Optional[int]:
    return REFERENCE.get(solver, {}).get(bits)


def run_bench(solvers: Iterable[str] = SOLVER_IDS, bits: Iterable[int] = range(1, 11)) -> list:
    """One row per (solver, N). A solution that fails verification aborts the run."""
    rows = []
    bits = list(bits)
    for solver in solvers:
        for n in bits:
            game = generate_two_counters(n).game
            t0 = time.perf_counter()
            try:
                res = solve(game, solver)
            except Exception as exc:  # row-level marker, keep benchmarking
                rows.append(BenchRow(solver, n, "", None, time.perf_counter() - t0,
                                     expected_value(solver, n), f"{type(exc).__name__}: {exc}"))
                continue
            elapsed = time.perf_counter() - t0
            report = verify_solution(game, res.solution)
            if not report.ok:
                raise VerificationFailed(f"{solver} on tc({n}): {report}")
            rows.append(BenchRow(solver, n, res.statistic, res.value, elapsed, expected_value(solver, n)))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    fields = ["solver", "bits", "statistic", "value", "expected", "match", "seconds", "error"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        d["match"] = "" if r.matches is None else ("yes" if r.matches else "no")
        d["seconds"] = f"{r.seconds:.4f}"
        w.writerow({k: ("" if d[k] is None else d[k]) for k in fields})
    return buf.getvalue()


def format_table(rows) -> str:
    header = ("solver", "N", "statistic", "value", "expected", "match", "seconds")
    body = []
    for r in rows:
        match = "-" if r.matches is None else ("ok" if r.matches else "MISMATCH")
        value = r.error or ("-" if r.value is None else f"{r.value:,}")
        expected = "-" if r.expected is None else f"{r.expected:,}"
        body.append((r.solver, str(r.bits), r.statistic or "-", value, expected, match, f"{r.seconds:.3f}"))
    widths = [max(len(x[i]) for x in [header] + body) for i in range(len(header))]
    lines = []
    for row in [header] + body:
        cells = [c.ljust(w) if i in (0, 2) else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
