"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see ``conftest.pytest_terminal_summary``) and also when this file
is executed directly.
"""
import time

import numpy as np
import pytest

from twocounters.game import Player
from twocounters.generator import Kind, expected_edge_count, expected_vertex_count, generate_two_counters
from twocounters.oracle import oracle_solve
from twocounters.pgsolver import parse_pgsolver, serialize_pgsolver
from twocounters.priopromo import Policy, solve_pp
from twocounters.randomgames import random_corpus
from twocounters.solvers import SOLVER_IDS, solve
from twocounters.tangle import solve_tl
from twocounters.verify import verify_solution
from twocounters.zielonka import solve_zielonka
from conftest import counter_ground_truth, distraction_game, mask_of, tangled_game, tc

E, O = Player.EVEN, Player.ODD
RESULTS = {}


def record(key, title, ok, detail=""):
    label = f"{str(key):<2}"
    RESULTS[str(key)] = f"criterion {label} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")


def summary_lines():
    order = sorted(RESULTS, key=lambda k: (int(k.rstrip("b")), k))
    return [RESULTS[k] for k in order]


def check(number, title):
    """Record PASS or FAIL for the decorated test; a returned string is shown as detail."""

    def wrap(fn):
        def test(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except AssertionError as exc:
                record(number, title, False, str(exc).splitlines()[0] if str(exc) else "assertion failed")
                raise
            record(number, title, True, detail or "")

        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test

    return wrap


@check(1, "generator sizes for N = 1..20")
def test_c01_sizes():
    t0 = time.perf_counter()
    for n in range(1, 21):
        g = generate_two_counters(n).game
        assert g.n == 3 * n * n + 5 * n == expected_vertex_count(n), n
        assert g.edge_count == 7 * n * n + 4 * n == expected_edge_count(n), n
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"{elapsed:.2f}s"
    return f"{elapsed:.2f}s"


@check(2, "three-bit priorities and same-bit z edges")
def test_c02_three_bits():
    t = tc(3)
    g = t.game
    pairs = set()
    for bit in range(3):
        for p in (E, O):
            pairs.add((int(g.priority[t.find(p, bit, Kind.LOW)]), int(g.priority[t.find(p, bit, Kind.HIGH)])))
            z = t.find(p, bit, Kind.Z)
            same = t.find(p.opponent, bit, Kind.LOW) in g.successors(z).tolist()
            assert same == (p is O), (p, bit)
    assert pairs == {(8, 15), (7, 14), (6, 13), (5, 12), (4, 11), (3, 10)}, sorted(pairs)


@pytest.mark.xfail(strict=True, reason="the path vertices b(j) lead into the opponent's counter and are "
                                       "won by the opponent, so no correct solver assigns whole counters")
@check(3, "every solver assigns each player exactly their own counter")
def test_c03_own_counters_literal():
    for n in range(1, 11):
        t = tc(n)
        for sid in SOLVER_IDS:
            sol = solve(t.game, sid).solution
            assert np.array_equal(sol.won_even, t.counter(E)), f"{sid} N={n}: b(j) vertices go to the opponent"


@check("3b", "every solver gives each player their counter minus its b(j) vertices, and verifies")
def test_c03_counters_with_path_vertices():
    """Every solver matches the counter split (b(j) to the opponent) and verifies, N = 1..10."""
    slowest = 0.0
    for n in range(1, 11):
        t = tc(n)
        truth = counter_ground_truth(t)
        for sid in SOLVER_IDS:
            t0 = time.perf_counter()
            sol = solve(t.game, sid).solution
            slowest = max(slowest, time.perf_counter() - t0)
            assert np.array_equal(sol.won_even, truth), (sid, n)
            assert verify_solution(t.game, sol).ok, (sid, n)
            assert slowest < 10.0, (sid, n, slowest)
    # the oracle confirms the split independently where it is small enough
    assert np.array_equal(oracle_solve(tc(1).game).won_even, counter_ground_truth(tc(1)))
    return f"slowest {slowest:.2f}s"


@check(4, "RR/RRDP promotions and TL/ATL tangles equal 2(2^N - 1), N = 1..12")
def test_c04_closed_form():
    for n in range(1, 13):
        g = tc(n).game
        want = 2 * (2 ** n - 1)
        for sid in ("rr", "rrdp", "tl", "atl"):
            got = solve(g, sid).value
            assert got == want, f"{sid} N={n}: {got} != {want}"


@check(5, "reference counts for ZLK, PP and DP")
def test_c05_reference_counts():
    zlk = [8, 21, 45, 91, 181, 359, 713, 1419, 2829, 5647]
    pp = [2, 9, 23, 52, 112, 235, 485, 990, 2006, 4045]
    dp = [2, 7, 18, 43, 97, 210, 442, 913, 1863, 3772]
    assert [solve_zielonka(tc(n).game)[1].value for n in range(1, 11)] == zlk
    assert [solve_pp(tc(n).game, Policy.PP)[1].value for n in range(1, 11)] == pp
    assert [solve_pp(tc(n).game, Policy.DP)[1].value for n in range(1, 11)] == dp
    t0 = time.perf_counter()
    assert solve_zielonka(generate_two_counters(15).game)[1].value == 180249
    assert solve_zielonka(generate_two_counters(20).game)[1].value == 5767203
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"{elapsed:.0f}s"
    return f"exact; N=15,20 in {elapsed:.1f}s"


@check(6, "Odd distraction bits of ZLK on five bits")
def test_c06_distraction_timeline():
    want = [4, 3, 4, 2, 4, 3, 4, 1, 4, 3, 4, 2, 4, 3, 4, 0, 4, 3, 4, 2, 4, 3, 4, 1, 4, 3, 4, 2, 4, 3, 4]
    t = tc(5)
    _, st = solve_zielonka(t.game, trace=True)
    got = [t.roles[e.vertices[0]].bit for e in st.distraction_events if e.player is O]
    assert got == want, got


@check(7, "DP promotion log on three bits")
def test_c07_dp_log():
    want = [
        (2, 6, False), (1, 5, False), (2, 8, True), (1, 7, False), (2, 8, True), (1, 7, False),
        (1, 7, False), (2, 14, True), (1, 15, False), (2, 14, False), (2, 6, False), (1, 5, False),
        (2, 14, True), (1, 15, False), (2, 14, False), (2, 14, False), (2, 14, False), (1, 15, False),
    ]
    _, st = solve_pp(tc(3).game, Policy.DP, log=True)
    got = [(p.source, p.target, p.delayed) for p in st.promotion_log]
    assert st.promotions == 18, st.promotions
    assert got == want, got


@check(8, "TL tangle log prefix on five bits")
def test_c08_tl_log():
    want = [(E, 4), (O, 4), (E, 3), (O, 3), (E, 4), (O, 4), (E, 2), (O, 2),
            (E, 4), (O, 4), (E, 3), (O, 3), (E, 4), (O, 4), (E, 1), (O, 1)]
    t = tc(5)
    _, st = solve_tl(t.game, log=True)
    got = [(e.player, t.roles[e.top_vertex].bit) for e in st.tangle_log if not e.dominion]
    assert got[:len(want)] == want, got[:len(want)]


@check(9, "all solvers agree with the oracle on 1000 random games")
def test_c09_oracle_equivalence():
    t0 = time.perf_counter()
    games = list(random_corpus(2024, 1000, max_vertices=8, max_priority=6, max_degree=3))
    for i, g in enumerate(games):
        truth = oracle_solve(g)
        for sid in SOLVER_IDS:
            sol = solve(g, sid).solution
            assert np.array_equal(sol.winner, truth.winner), f"game {i}, {sid}"
            assert verify_solution(g, sol).ok, f"game {i}, {sid}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 60, f"{elapsed:.0f}s"
    return f"seed 2024, {elapsed:.1f}s"


@check(10, "figure fixtures")
def test_c10_figures():
    g, ids = distraction_game()
    g3, ids3 = tangled_game()
    for sid in SOLVER_IDS:
        sol = solve(g, sid).solution
        assert np.array_equal(sol.won_even, mask_of(ids, "bcf", g.n)), sid
        assert np.array_equal(sol.won_odd, mask_of(ids, "ade", g.n)), sid
        sol3 = solve(g3, sid).solution
        assert sol3.won_odd.all() and sol3.strategy[ids3["d"]] == ids3["e"], sid
        assert verify_solution(g3, sol3).ok, sid
    assert np.array_equal(oracle_solve(g).won_even, mask_of(ids, "bcf", g.n))


@check(11, "PGSolver round trip")
def test_c11_round_trip():
    for n in range(1, 11):
        g = tc(n).game
        text = serialize_pgsolver(g)
        assert parse_pgsolver(text) == g, n
        assert serialize_pgsolver(parse_pgsolver(text)) == text, n
    for i, g in enumerate(random_corpus(7, 100, max_vertices=12)):
        assert parse_pgsolver(serialize_pgsolver(g)) == g, i


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c") and callable(v)]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    for line in summary_lines():
        print(line)
    sys.exit(0 if all("PASS" in RESULTS[k] for k in RESULTS if k != "3") else 1)
