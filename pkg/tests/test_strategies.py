import pytest

from ssetool.games import Arena, DomainError
from ssetool.strategies import (ALL, MealyMachine, ProductMachine, build_product_graph,
                                is_deterministic, restrict_deviators, validate_machine)


def two_player_arena():
    # p moves at u, q moves at v
    return Arena(["p", "q"], ["u", "v", "w"], {"u": "p", "v": "q", "w": "p"},
                 [("u", "v"), ("u", "w"), ("v", "u"), ("v", "w"), ("w", "w")], "u")


def honest_machine(arena):
    return MealyMachine.from_tuples(ALL, ["q"], "q",
                                    [("q", "u", "q", "v"), ("q", "v", "q", "u"), ("q", "w", "q", "w")])


def test_machine_validates():
    a = two_player_arena()
    assert validate_machine(a, honest_machine(a)) == []


def test_machine_reports_non_edge_and_missing():
    a = two_player_arena()
    m = MealyMachine.from_tuples(ALL, ["q"], "q", [("q", "u", "q", "u"), ("q", "v", "q", "u")])
    probs = validate_machine(a, m)
    assert any("not an edge" in p or "edge" in p for p in probs)
    assert any("w" in p for p in probs)


def test_is_deterministic():
    a = two_player_arena()
    assert is_deterministic(honest_machine(a))
    m = MealyMachine.from_tuples(ALL, ["q"], "q", [("q", "u", "q", "v"), ("q", "u", "q", "w"),
                                                   ("q", "v", "q", "u"), ("q", "w", "q", "w")])
    assert not is_deterministic(m)


def test_product_graph_labels():
    a = two_player_arena()
    g = build_product_graph(a, honest_machine(a))
    # nodes are (vertex, state); u->v and v->u follow the machine, the rest deviate
    labels = {(g.vertex(i), g.vertex(j)): lab for i, row in enumerate(g.succ) for j, lab in row}
    assert labels[("u", "v")] is None
    assert labels[("u", "w")] == "p"
    assert labels[("v", "u")] is None
    assert labels[("v", "w")] == "q"
    assert labels[("w", "w")] is None
    assert len(g) == 3


def test_product_graph_has_no_sinks():
    a = two_player_arena()
    g = build_product_graph(a, honest_machine(a))
    assert all(row for row in g.succ)


def test_product_graph_needs_all_players_machine():
    a = two_player_arena()
    m = MealyMachine("p", ["q"], "q", {})
    with pytest.raises(DomainError):
        build_product_graph(a, m)


def test_restrict_deviators():
    a = two_player_arena()
    g = build_product_graph(a, honest_machine(a))
    r = restrict_deviators(g, {"q"})
    assert all(lab in (None, "q") for row in r.succ for _, lab in row)
    # w is still reachable through q's deviation
    assert {x[0] for x in r.nodes} == {"u", "v", "w"}
    r0 = restrict_deviators(g, set())
    assert {x[0] for x in r0.nodes} == {"u", "v"}


def per_player(arena):
    mp = MealyMachine.from_tuples("p", ["a", "b"], "a",
                                  [("a", "u", "b", "v"), ("b", "u", "a", "w"),
                                   ("a", "v", "a"), ("b", "v", "b"),
                                   ("a", "w", "a", "w"), ("b", "w", "b", "w")])
    mq = MealyMachine.from_tuples("q", ["x"], "x", [("x", "u", "x"), ("x", "v", "x", "u"), ("x", "w", "x")])
    return mp, mq


def test_product_machine_size_and_outputs():
    a = two_player_arena()
    mp, mq = per_player(a)
    pm = ProductMachine(a, [mq, mp])
    full = pm.materialize()
    assert len(full.states) <= len(mp.states) * len(mq.states)
    assert pm.tuples(("a", "x"), "u") == [(("b", "x"), "v")]
    assert pm.tuples(("a", "x"), "v") == [(("a", "x"), "u")]
    assert validate_machine(a, full) == []


def test_product_machine_scope_errors():
    a = two_player_arena()
    mp, mq = per_player(a)
    with pytest.raises(DomainError):
        ProductMachine(a, [mp])
    with pytest.raises(DomainError):
        ProductMachine(a, [mp, mp])
