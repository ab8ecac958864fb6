from ssetool.oracle import oracle_solve_parity
from ssetool.parity import (ELFormula, TwoPlayerGame, f_and, f_not, f_or, lar_reduce,
                            parity_formula, zielonka_solve)


def random_two_player(rng, n, colors=4):
    owner = [rng.randint(0, 1) for _ in range(n)]
    succ = [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(n)]
    prio = [rng.randint(0, colors - 1) for _ in range(n)]
    return owner, succ, prio


def oracle_winner(owner, succ, prio, v):
    n = len(owner)
    return oracle_solve_parity(range(n), dict(enumerate(owner)), dict(enumerate(succ)),
                               dict(enumerate(prio)), v)


def test_self_loops():
    (w0, w1), _ = zielonka_solve(TwoPlayerGame([0], [[0]], [2]))
    assert w0 == {0} and not w1
    (w0, w1), _ = zielonka_solve(TwoPlayerGame([0], [[0]], [3]))
    assert w1 == {0} and not w0


def test_zielonka_matches_oracle(rng):
    for _ in range(200):
        owner, succ, prio = random_two_player(rng, rng.randint(1, 8))
        (w0, w1), _ = zielonka_solve(TwoPlayerGame(owner, succ, prio))
        assert w0 | w1 == set(range(len(owner))) and not w0 & w1
        for v in range(len(owner)):
            assert (0 if v in w0 else 1) == oracle_winner(owner, succ, prio, v)


def test_zielonka_strategies_win(rng):
    for _ in range(150):
        owner, succ, prio = random_two_player(rng, rng.randint(1, 7))
        (w0, w1), strat = zielonka_solve(TwoPlayerGame(owner, succ, prio))
        for p, region in ((0, w0), (1, w1)):
            fixed = [[strat[v]] if owner[v] == p and v in region else s for v, s in enumerate(succ)]
            for v in region:
                assert strat.get(v, succ[v][0]) in region or owner[v] != p
                assert oracle_winner(owner, fixed, prio, v) == p


def random_formula(rng, m, depth=2):
    if depth == 0 or rng.random() < 0.3:
        return ("atom", rng.randrange(m))
    k = rng.choice(("and", "or", "not"))
    if k == "not":
        return f_not(random_formula(rng, m, depth - 1))
    items = [random_formula(rng, m, depth - 1) for _ in range(2)]
    return f_and(items) if k == "and" else f_or(items)


def random_el(rng):
    n = 4
    owner, succ, _ = random_two_player(rng, n)
    m = rng.randint(1, 3)
    atoms = [frozenset(v for v in range(n) if rng.random() < 0.5) for _ in range(m)]
    f = ELFormula(atoms, random_formula(rng, m))
    labels = [frozenset(i for i, a in enumerate(atoms) if v in a) for v in range(n)]
    return owner, succ, labels, f


def test_lar_parity_matches_formula_on_cycles(rng):
    for _ in range(100):
        owner, succ, labels, f = random_el(rng)
        lar = lar_reduce(owner, succ, labels, f, list(range(4)))
        g = lar.game
        for _ in range(20):
            # walk until a node repeats, then compare the cycle's parity and formula value
            x = rng.randrange(len(g))
            seen, path = {}, []
            while x not in seen:
                seen[x] = len(path)
                path.append(x)
                x = rng.choice(g.succ[x])
            cyc = path[seen[x]:]
            par = min(g.priority[i] for i in cyc) % 2 == 0
            assert par == f.holds_on({lar.nodes[i][0] for i in cyc})


def test_lar_zielonka_matches_oracle_on_expansion(rng):
    for _ in range(100):
        owner, succ, labels, f = random_el(rng)
        lar = lar_reduce(owner, succ, labels, f, list(range(4)))
        g = lar.game
        (w0, _), _ = zielonka_solve(g)
        for v in range(4):
            i = lar.start_index(v)
            assert (0 if i in w0 else 1) == oracle_winner(g.owner, g.succ, g.priority, i)


def test_inf_all_vertices():
    owner, succ = [0, 1], [[1], [0]]
    f = ELFormula([frozenset({0, 1})], ("atom", 0))
    lar = lar_reduce(owner, succ, [frozenset({0})] * 2, f, [0, 1])
    (w0, _), _ = zielonka_solve(lar.game)
    assert lar.start_index(0) in w0 and lar.start_index(1) in w0


def test_inf_single_vertex_on_two_cycle():
    # player 0 chooses at 0 between the 2-cycle through 1 and a self loop
    owner, succ = [0, 1, 1], [[1, 0], [0], [2]]
    f = ELFormula([frozenset({1})], ("atom", 0))
    labels = [frozenset(), frozenset({0}), frozenset()]
    lar = lar_reduce(owner, succ, labels, f, [0, 2])
    (w0, w1), _ = zielonka_solve(lar.game)
    assert lar.start_index(0) in w0
    assert lar.start_index(2) in w1


def test_parity_formula_matches_min_parity(rng):
    for _ in range(200):
        k = rng.randint(0, 5)
        inf = {c for c in range(k + 1) if rng.random() < 0.5} or {k}
        t = parity_formula(lambda c: ("atom", c), k)
        assert ELFormula([frozenset([c]) for c in range(k + 1)], t).evaluate(inf) == (min(inf) % 2 == 0)
