import functools

import numpy as np
import pytest

from twocounters.game import Player, build_game
from twocounters.generator import generate_two_counters

E, O = Player.EVEN, Player.ODD


def named_game(spec):
    """Build a game from ``{name: (priority, owner, [successor names])}``."""
    names = list(spec)
    ids = {n: i for i, n in enumerate(names)}
    game = build_game([(p, o, [ids[s] for s in succ], n) for n, (p, o, succ) in spec.items()])
    return game, ids


def distraction_game():
    # Even wins {b, c, f}; Odd wins {a, d, e}
    return named_game({
        "a": (4, O, ["d"]),
        "b": (0, E, ["a", "c"]),
        "c": (2, O, ["b", "c"]),
        "d": (1, E, ["e", "d"]),
        "e": (0, O, ["d", "f"]),
        "f": (5, E, ["c"]),
    })


def tangled_game():
    # Odd wins everything with d -> e; the 3-tangle {c, e} sits inside
    return named_game({
        "a": (6, E, ["b"]),
        "b": (5, E, ["d"]),
        "c": (2, E, ["e", "b"]),
        "d": (1, O, ["e", "a"]),
        "e": (3, E, ["c"]),
    })


@functools.lru_cache(maxsize=None)
def tc(n):
    return generate_two_counters(n)


def counter_ground_truth(tcg):
    """Even's region in a Two Counters game.

    Each player wins their own counter except the path vertices b(j), which
    lead into the opponent's counter and are won by the opponent.
    """
    from twocounters.generator import Kind

    won_even = tcg.counter(E).copy()
    for v, role in enumerate(tcg.roles):
        if role.kind is Kind.PATH_OPP:
            won_even[v] = role.counter_player is O
    return won_even


def mask_of(ids, names, n):
    m = np.zeros(n, dtype=bool)
    m[[ids[x] for x in names]] = True
    return m


@pytest.fixture
def fig_distraction():
    return distraction_game()


@pytest.fixture
def fig_tangled():
    return tangled_game()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
