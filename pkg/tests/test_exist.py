import random
from itertools import product as cartesian

import pytest

from ssetool.check import check_sse, check_sse_omega
from ssetool.exist import (DeviatorGame, challenger_objective, exists_sse, exists_sse_omega,
                           extract_protocol_machine)
from ssetool.games import (Arena, Coloring, DomainError, OmegaRegularGame, ParityGame,
                           universal_automaton)
from ssetool.oracle import oracle_witness_search
from ssetool.parity import FALSE, f_and, f_not, f_or
from ssetool.reductions import (Dfa, QbfFormula, dfa_intersection_to_existence, qbf_holds,
                                qsat_to_existence, random_dfa, random_instance)
from ssetool.strategies import ALL, MealyMachine


def par(p):
    return ("par", p)


def test_challenger_objective_examples():
    ps = ["1", "2"]
    assert challenger_objective(ps, frozenset(), (1, 1), False) == f_or([f_not(par("1")), f_not(par("2"))])
    assert challenger_objective(ps, frozenset(ps), (1, 1), False) == FALSE
    assert challenger_objective(ps, frozenset({"1"}), (1, 1), False) == f_and([f_not(par("2")), par("1")])


def test_deviator_moves():
    a = Arena(["p"], ["u", "v"], {"u": "p", "v": "p"}, [("u", "u"), ("u", "v"), ("v", "v")], "u")
    dg = DeviatorGame(ParityGame(a, {"p": Coloring({"u": 0, "v": 0})}), (1,))
    assert dg.prover_moves(("u", frozenset())) == [("u", "u", frozenset()), ("u", "v", frozenset())]
    assert dg.challenger_moves(("u", "v", frozenset())) == [("v", frozenset()), ("u", frozenset({"p"}))]
    one = Arena(["p"], ["u"], {"u": "p"}, [("u", "u")], "u")
    nodes, _ = DeviatorGame(ParityGame(one, {"p": Coloring({"u": 0})}), (1,)).explore()
    assert nodes == [("u", frozenset())]


def test_region_count_bound(rng):
    for _ in range(30):
        game, _ = random_instance(rng)
        nodes, _ = DeviatorGame(game, (1,) * len(game.arena.players)).explore()
        assert len({d for _, d in nodes}) <= 2 ** len(game.arena.players)


def test_qsat_example():
    f = QbfFormula(2, [[1, 2], [1, -2]])
    assert qbf_holds(f)
    game, target = qsat_to_existence(f)
    assert not exists_sse(game, target).exists


def test_single_player_exists():
    a = Arena(["p"], ["u", "v", "w"], {x: "p" for x in "uvw"},
              [("u", "v"), ("u", "w"), ("v", "v"), ("w", "w")], "u")
    game = ParityGame(a, {"p": Coloring({"u": 1, "v": 0, "w": 1})})
    for target in ((1,), (0,)):
        v = exists_sse(game, target)
        assert v.exists
        m = extract_protocol_machine(v)
        assert check_sse(game, m).all_sse


def test_extract_refuses_not_exists():
    f = QbfFormula(2, [[1, 2], [1, -2]])
    game, target = qsat_to_existence(f)
    with pytest.raises(DomainError):
        extract_protocol_machine(exists_sse(game, target))


def outcome_payoff(game, m):
    arena = game.arena
    x, seq, pos = (arena.initial, m.initial), [], {}
    while x not in pos:
        pos[x] = len(seq)
        seq.append(x)
        (t, w), = m.tuples(x[1], x[0])
        x = (w, t)
    from ssetool.games import Lasso
    las = Lasso([u for u, _ in seq[:pos[x]]], [u for u, _ in seq[pos[x]:]])
    return game.payoff(las), game.correct(las)


def positional_sse_with(game, target):
    """Some memoryless profile is an SSE with this payoff (one-sided oracle)."""
    arena = game.arena
    for choice in cartesian(*[arena.succ[u] for u in arena.vertices]):
        table = {("q", u): [("q", w)] for u, w in zip(arena.vertices, choice)}
        m = MealyMachine(ALL, ["q"], "q", table)
        pay, ok = outcome_payoff(game, m)
        if pay == target and ok and oracle_witness_search(game, m).all_sse:
            return True
    return False


def test_exists_closed_loop_and_positional_oracle():
    rng = random.Random(5)
    seen = {True: 0, False: 0}
    for _ in range(120):
        game, _ = random_instance(rng, max_vertices=4, max_players=2, max_color=3)
        target = tuple(rng.randint(0, 1) for _ in game.arena.players)
        v = exists_sse(game, target)
        seen[v.exists] += 1
        if v.exists:
            m = extract_protocol_machine(v)
            assert check_sse(game, m).all_sse
            assert oracle_witness_search(game, m).all_sse
            assert outcome_payoff(game, m) == (target, True)
        else:
            assert not positional_sse_with(game, target)
    assert seen[True] and seen[False]


def test_universal_correctness_changes_nothing(rng):
    for _ in range(40):
        game, _ = random_instance(rng, max_vertices=4)
        target = tuple(rng.randint(0, 1) for _ in game.arena.players)
        with_corr = ParityGame(game.arena, game.objectives,
                               correctness=Coloring({v: 0 for v in game.arena.vertices}))
        assert exists_sse(game, target).exists == exists_sse(with_corr, target).exists


def test_omega_universal_matches_trivial_parity(rng):
    for _ in range(10):
        game, _ = random_instance(rng, max_vertices=4)
        n = len(game.arena.players)
        g = OmegaRegularGame(game.arena, {p: universal_automaton(game.arena) for p in game.arena.players})
        trivial = ParityGame(game.arena, {p: Coloring({v: 0 for v in game.arena.vertices})
                                          for p in game.arena.players})
        for target in ((1,) * n, (0,) * n):
            assert exists_sse_omega(g, target).exists == exists_sse(trivial, target).exists


def test_dfa_existence_gadget():
    ends_a = Dfa([0, 1], 0, [1], {(0, "a"): 1, (0, "b"): 0, (1, "a"): 1, (1, "b"): 0})
    ends_b = Dfa([0, 1], 0, [1], {(0, "a"): 0, (0, "b"): 1, (1, "a"): 0, (1, "b"): 1})
    game, target = dfa_intersection_to_existence([ends_a, ends_a])
    v = exists_sse_omega(game, target)
    assert v.exists
    assert check_sse_omega(game, extract_protocol_machine(v)).all_sse
    game, target = dfa_intersection_to_existence([ends_a, ends_b])
    assert not exists_sse_omega(game, target).exists


def test_dfa_existence_gadget_random():
    from ssetool.reductions import intersection_witness
    rng = random.Random(3)
    for _ in range(15):
        dfas = [random_dfa(rng, 2) for _ in range(2)]
        game, target = dfa_intersection_to_existence(dfas)
        assert exists_sse_omega(game, target).exists == (intersection_witness(dfas, first="a") is not None)


def test_extracted_machine_checks_on_omega_game():
    ends_a = Dfa([0, 1], 0, [1], {(0, "a"): 1, (0, "b"): 0, (1, "a"): 1, (1, "b"): 0})
    game, target = dfa_intersection_to_existence([ends_a])
    v = exists_sse_omega(game, target)
    m = extract_protocol_machine(v)
    assert check_sse_omega(game, m).all_sse
