import random

import pytest

from ssetool.check import check_sse, check_sse_omega
from ssetool.exist import exists_sse
from ssetool.games import Arena, Coloring, DomainError, ParityGame
from ssetool.oracle import oracle_solve_parity, oracle_witness_search
from ssetool.reductions import (CnfFormula, Dfa, QbfFormula, cnf_satisfiable,
                                dfa_intersection_to_checking, intersection_witness, qbf_holds,
                                qsat_to_existence, random_cnf, sat_to_checking, small_cnfs)
from ssetool.strategies import ALL, MealyMachine


def dfa(states, accepting, delta):
    return Dfa(states, 0, accepting, delta)


def test_cnf_rejects_bad_literals():
    with pytest.raises(DomainError):
        CnfFormula(1, [[2]])
    with pytest.raises(DomainError):
        CnfFormula(1, [[]])


def test_truth_tables():
    assert not cnf_satisfiable(CnfFormula(1, [[1], [-1]]))
    assert cnf_satisfiable(CnfFormula(2, [[1, 2], [-1]]))
    assert qbf_holds(QbfFormula(1, [[1]]))
    assert not qbf_holds(QbfFormula(2, [[1], [2]]))


def test_small_cnfs_count():
    assert len(small_cnfs(2)) == 64


def test_sat_gadget_players():
    for n in (1, 2, 3):
        game, m = sat_to_checking(CnfFormula(n, [[1]]))
        assert len(game.arena.players) == 2 * n + 1


def test_sat_gadget_examples():
    game, m = sat_to_checking(CnfFormula(1, [[1], [-1]]))
    assert check_sse(game, m).all_sse
    game, m = sat_to_checking(CnfFormula(1, [[1]]))
    assert not check_sse(game, m).all_sse
    assert not oracle_witness_search(game, m).all_sse


def test_sat_gadget_random():
    rng = random.Random(1)
    for _ in range(15):
        f = random_cnf(rng, 3, 3, 3)
        game, m = sat_to_checking(f)
        assert check_sse(game, m).all_sse == (not cnf_satisfiable(f))


def test_qsat_examples():
    game, target = qsat_to_existence(QbfFormula(1, [[1]]))
    assert not exists_sse(game, target).exists
    game, target = qsat_to_existence(QbfFormula(2, [[1], [2]]))
    assert exists_sse(game, target).exists
    assert len(game.arena.players) == 2 * 2 + 2


def test_dfa_checking_examples():
    a_star = dfa([0, 1], [0], {(0, "a"): 0, (0, "b"): 1, (1, "a"): 1, (1, "b"): 1})
    empty = dfa([0], [], {(0, "a"): 0, (0, "b"): 0})
    both_ab = dfa([0, 1, 2, 3], [2], {(0, "a"): 1, (0, "b"): 3, (1, "a"): 3, (1, "b"): 2,
                                      (2, "a"): 3, (2, "b"): 3, (3, "a"): 3, (3, "b"): 3})
    sigma = dfa([0], [0], {(0, "a"): 0, (0, "b"): 0})
    game, ms = dfa_intersection_to_checking([a_star, empty])
    assert check_sse_omega(game, ms).all_sse
    game, ms = dfa_intersection_to_checking([both_ab, both_ab])
    v = check_sse_omega(game, ms)
    assert not v.all_sse
    game, ms = dfa_intersection_to_checking([sigma])
    assert not check_sse_omega(game, ms).all_sse
    assert intersection_witness([both_ab, both_ab]) == "ab"


def test_dfa_rejects_incomplete():
    with pytest.raises(DomainError):
        Dfa([0], 0, [], {(0, "a"): 0})


def test_oracle_one_vertex():
    a = Arena(["p"], ["v"], {"v": "p"}, [("v", "v")], "v")
    game = ParityGame(a, {"p": Coloring({"v": 1})})
    m = MealyMachine(ALL, ["q"], "q", {("q", "v"): [("q", "v")]})
    assert oracle_witness_search(game, m).all_sse


def test_oracle_rejects_nondeterminism():
    a = Arena(["p"], ["v", "w"], {"v": "p", "w": "p"}, [("v", "v"), ("v", "w"), ("w", "w")], "v")
    game = ParityGame(a, {"p": Coloring({"v": 1, "w": 0})})
    m = MealyMachine(ALL, ["q"], "q", {("q", "v"): [("q", "v"), ("q", "w")], ("q", "w"): [("q", "w")]})
    with pytest.raises(DomainError):
        oracle_witness_search(game, m)


def test_oracle_parity_guard():
    n = 21
    succ = {v: [0, 1, 2] for v in range(n)}
    with pytest.raises(DomainError):
        oracle_solve_parity(range(n), {v: 0 for v in range(n)}, succ, {v: 0 for v in range(n)}, 0)
