import numpy as np
import pytest

from twocounters.game import (
    DanglingEdge,
    DuplicateSuccessor,
    EmptySuccessorList,
    GameError,
    ParityGame,
    Player,
    Solution,
    build_game,
    solution_from_sets,
    strategy_items,
    subgame_check,
)
from twocounters.attractors import attract
from conftest import tangled_game, tc


def test_player_basics():
    assert Player.EVEN.opponent is Player.ODD
    assert Player.of_priority(7) is Player.ODD
    assert str(Player.EVEN) == "Even"


def test_single_self_loop():
    g = build_game([(0, Player.EVEN, [0])])
    assert g.n == 1 and g.max_priority == 0 and g.edge_count == 1
    assert g.successors(0).tolist() == [0]
    assert g.predecessors(0).tolist() == [0]


def test_tangled_game_shape():
    g, ids = tangled_game()
    assert g.n == 5 and g.max_priority == 6
    assert np.flatnonzero(g.owner == 1).tolist() == [ids["d"]]
    assert g.label(ids["c"]) == "c"


def test_empty_successor_list():
    with pytest.raises(EmptySuccessorList) as exc:
        build_game([(0, 0, [0]), (1, 1, [])])
    assert exc.value.vertex == 1


def test_dangling_and_duplicate_edges():
    with pytest.raises(DanglingEdge):
        build_game([(0, 0, [3])])
    with pytest.raises(DuplicateSuccessor):
        build_game([(0, 0, [0, 0])])
    with pytest.raises(GameError):
        build_game([])


def test_bad_arrays_rejected():
    with pytest.raises(GameError):
        ParityGame([0], [2], [0, 1], [0])
    with pytest.raises(GameError):
        ParityGame([-1], [0], [0, 1], [0])


def test_arrays_are_frozen():
    g = build_game([(0, 0, [0])])
    with pytest.raises(ValueError):
        g.priority[0] = 3


def test_predecessors_sorted():
    g = build_game([(0, 0, [2]), (0, 0, [2]), (0, 0, [0, 1, 2])])
    assert g.predecessors(2).tolist() == [0, 1, 2]


def test_subgame_check():
    g = tc(1).game
    assert subgame_check(g, g.full_set())
    top = int(np.argmax(g.priority))
    a, _ = attract(g, g.full_set(), Player.of_priority(g.max_priority), [top])
    assert subgame_check(g, ~a)
    h = build_game([(0, 0, [1]), (0, 0, [0])])
    assert not subgame_check(h, h.vertex_set([0]))


def test_solution_views():
    g = build_game([(0, 0, [1]), (1, 1, [0, 1])])
    sol = solution_from_sets(g, [True, False], [1, 1])
    assert sol.winner.tolist() == [0, 1]
    assert sol.strategy_even == {0: 1}
    assert sol.strategy_odd == {1: 1}
    assert sol.won_by(Player.ODD).tolist() == [False, True]
    assert sol.same_partition(Solution(sol.winner.copy(), np.array([-1, -1])))
    assert strategy_items(np.array([-1, 0])) == {1: 0}


def test_equality_ignores_identity():
    a = build_game([(0, 0, [0], "x")])
    b = build_game([(0, 0, [0], "x")])
    assert a == b and a != build_game([(1, 0, [0], "x")])
