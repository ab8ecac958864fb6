"""Acceptance criteria 1-8.

Under pytest every criterion is one test and a pass/fail line per criterion is
printed in the terminal summary.  Run directly (python3 tests/test_acceptance.py)
to print the same lines without pytest.
"""

import random
import sys
import time

from ssetool.check import check_product, check_sse, check_sse_omega
from ssetool.exist import DeviatorGame, exists_sse, extract_protocol_machine
from ssetool.games import Lasso, validate_arena
from ssetool.oracle import oracle_solve_parity, oracle_witness_search
from ssetool.parity import TwoPlayerGame, zielonka_solve
from ssetool.protocols import (exists_safe_protocol, naive_exchange_challenge, protocol_graph,
                               tripartite_challenge, ttp_exchange_challenge, verify_protocol,
                               zhou_gollmann_challenge)
from ssetool.reductions import (QbfFormula, cnf_satisfiable, dfa_intersection_to_checking,
                                intersection_witness, qbf_holds, qsat_to_existence, random_cnf,
                                random_dfa, random_instance, sat_to_checking, small_cnfs)
from ssetool.strategies import build_product_graph

try:
    from conftest import ACCEPTANCE
except ImportError:
    ACCEPTANCE = {}

# instances where existence holds, gathered by criteria 3 and 6 for criterion 7
EXISTS_CASES = {}


def record(n, name, ok, detail):
    line = "criterion %d %-28s %s  %s" % (n, name, "PASS" if ok else "FAIL", detail)
    ACCEPTANCE[n] = line
    return ok, line


def outcome(game, m):
    """The unique non-deviating lasso of a deterministic all-players machine."""
    arena = game.arena
    x, seq, pos = (arena.initial, m.initial), [], {}
    while x not in pos:
        pos[x] = len(seq)
        seq.append(x)
        (t, w), = m.tuples(x[1], x[0])
        x = (w, t)
    k = pos[x]
    return Lasso([u for u, _ in seq[:k]], [u for u, _ in seq[k:]])


def random_lasso(arena, rng):
    v, seen, path = arena.initial, {}, []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = rng.choice(arena.succ[v])
    return Lasso(path[:seen[v]], path[seen[v]:])


def criterion_1():
    rng = random.Random(1)
    t0 = time.perf_counter()
    bad = 0
    negatives = 0
    n = 250
    for _ in range(n):
        game, m = random_instance(rng, max_vertices=6, max_players=3, max_states=3, max_color=4)
        a = check_sse(game, m).all_sse
        b = oracle_witness_search(game, m).all_sse
        bad += a != b
        negatives += not a
    dt = time.perf_counter() - t0
    return record(1, "check vs oracle", bad == 0 and dt < 60,
                  "%d instances, %d not-SSE, %d disagreements, %.1fs" % (n, negatives, bad, dt))


def criterion_2():
    rng = random.Random(2)
    forms = small_cnfs(2) + [random_cnf(rng, 3, 3, 3) for _ in range(20)]
    bad = 0
    for f in forms:
        game, m = sat_to_checking(f)
        bad += check_sse(game, m).all_sse != (not cnf_satisfiable(f))
    return record(2, "SAT gadget", bad == 0 and len(forms) == 84,
                  "%d formulas, %d disagreements" % (len(forms), bad))


def criterion_3():
    bad = 0
    forms = [QbfFormula(2, f.clauses) for f in small_cnfs(2)]
    found = []
    for i, f in enumerate(forms):
        game, target = qsat_to_existence(f)
        v = exists_sse(game, target)
        bad += v.exists != (not qbf_holds(f))
        if v.exists:
            found.append((game, target, v))
    EXISTS_CASES["qsat"] = found
    return record(3, "QSAT gadget", bad == 0,
                  "%d formulas, %d exist, %d disagreements" % (len(forms), len(found), bad))


def criterion_4():
    rng = random.Random(4)
    bad = 0
    empties = 0
    for _ in range(50):
        dfas = [random_dfa(rng, 3), random_dfa(rng, 3)]
        game, machines = dfa_intersection_to_checking(dfas)
        empty = intersection_witness(dfas) is None
        empties += empty
        bad += check_sse_omega(game, machines).all_sse != empty
    return record(4, "DFA-intersection gadget", bad == 0,
                  "50 pairs, %d empty intersections, %d disagreements" % (empties, bad))


def criterion_5():
    rng = random.Random(5)
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 6)
        owner = [rng.randint(0, 1) for _ in range(n)]
        succ = [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(n)]
        prio = [rng.randint(0, 3) for _ in range(n)]
        (w0, _), _ = zielonka_solve(TwoPlayerGame(owner, succ, prio))
        for v in range(n):
            o = oracle_solve_parity(range(n), dict(enumerate(owner)), dict(enumerate(succ)),
                                    dict(enumerate(prio)), v)
            bad += (0 if v in w0 else 1) != o
    return record(5, "Zielonka vs enumeration", bad == 0, "500 games, %d disagreements" % bad)


def criterion_6():
    parts = []
    ok = True

    t0 = time.perf_counter()
    a = exists_safe_protocol(naive_exchange_challenge())[0]
    dt = time.perf_counter() - t0
    ok &= (not a) and dt < 120
    parts.append("a:%s %.1fs" % ("not-exists" if not a else "exists", dt))

    t0 = time.perf_counter()
    c = ttp_exchange_challenge()
    b, m, _ = exists_safe_protocol(c)
    dt = time.perf_counter() - t0
    ok &= b and dt < 120
    parts.append("b:%s %.1fs" % ("exists" if b else "not-exists", dt))
    if b:
        EXISTS_CASES["ttp"] = (c, m)

    t0 = time.perf_counter()
    zg = []
    for theta in (1, 2, 3):
        v = verify_protocol(*zhou_gollmann_challenge(theta))
        w = verify_protocol(*zhou_gollmann_challenge(theta, withhold=True))
        good = v.safe and not w.safe and w.failure == "sse" and w.witness is not None
        ok &= good
        zg.append("%d:%s/%s" % (theta, v.outcome, w.failure))
    dt = time.perf_counter() - t0
    ok &= dt < 120
    parts.append("c:%s %.1fs" % (",".join(zg), dt))

    t0 = time.perf_counter()
    c, m = tripartite_challenge(True)
    with_p = verify_protocol(c, m)
    c2, m2 = tripartite_challenge(False)
    without = verify_protocol(c2, m2)
    d_exists, dm, _ = exists_safe_protocol(c)
    dt = time.perf_counter() - t0
    ok &= with_p.safe and not without.safe and without.failure == "sse" and dt < 120
    parts.append("d:%s/%s %.1fs" % (with_p.outcome, "not-SSE" if without.failure == "sse" else without.outcome, dt))
    if d_exists:
        EXISTS_CASES["tripartite"] = (c, dm)
    return record(6, "protocol case studies", bool(ok), "; ".join(parts))


def criterion_7():
    if "qsat" not in EXISTS_CASES:
        criterion_3()
    if "ttp" not in EXISTS_CASES or "tripartite" not in EXISTS_CASES:
        criterion_6()
    bad = 0
    count = 0
    for game, target, v in EXISTS_CASES["qsat"]:
        m = extract_protocol_machine(v)
        count += 1
        bad += not (check_sse(game, m).all_sse and game.payoff(outcome(game, m)) == tuple(target))
    for key in ("ttp", "tripartite"):
        if key not in EXISTS_CASES:
            bad += 1
            continue
        c, m = EXISTS_CASES[key]
        count += 1
        g, graph = protocol_graph(c, m)
        v = verify_protocol(c, m)
        bad += not (check_product(g, graph).all_sse and v.safe and v.correct is not False)
    return record(7, "closed loop", bad == 0 and count > 2, "%d exists instances, %d failures" % (count, bad))


def criterion_8():
    rng = random.Random(8)
    sinks = 0
    products = 0
    for _ in range(200):
        game, m = random_instance(rng)
        if validate_arena(game.arena):
            continue
        g = build_product_graph(game.arena, m)
        products += 1
        sinks += sum(1 for row in g.succ if not row)
    for c, m in (zhou_gollmann_challenge(2), tripartite_challenge(True)):
        _, g = protocol_graph(c, m)
        products += 1
        sinks += sum(1 for row in g.succ if not row)

    shrinks = 0
    plays = 0
    while plays < 10000:
        game, _ = random_instance(rng)
        dg = DeviatorGame(game, tuple(rng.randint(0, 1) for _ in game.arena.players))
        for _ in range(50):
            x = dg.initial
            for _ in range(30):
                y = rng.choice(dg.prover_moves(x))
                z = rng.choice(dg.challenger_moves(y))
                shrinks += not x[1] <= z[1]
                x = z
            plays += 1

    moved = 0
    for _ in range(1000):
        game, _ = random_instance(rng)
        las = random_lasso(game.arena, rng)
        base = game.payoff(las)
        j = rng.randrange(len(las.cycle))
        unrolled = Lasso(las.prefix + las.cycle[:j], las.cycle[j:] + las.cycle[:j])
        variants = [las.rotate(rng.randrange(len(las.cycle) + 1)), las.repeat(rng.randint(2, 4)), unrolled]
        moved += any(game.payoff(x) != base for x in variants)
    ok = sinks == 0 and shrinks == 0 and moved == 0
    return record(8, "structural invariants", ok,
                  "%d products, %d sinks; %d plays, %d shrinks; 1000 lassos, %d changed" % (
                      products, sinks, plays, shrinks, moved))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def test_criterion_1_check_matches_oracle():
    ok, line = criterion_1()
    assert ok, line


def test_criterion_2_sat_gadget():
    ok, line = criterion_2()
    assert ok, line


def test_criterion_3_qsat_gadget():
    ok, line = criterion_3()
    assert ok, line


def test_criterion_4_dfa_gadget():
    ok, line = criterion_4()
    assert ok, line


def test_criterion_5_zielonka():
    ok, line = criterion_5()
    assert ok, line


def test_criterion_6_case_studies():
    ok, line = criterion_6()
    assert ok, line


def test_criterion_7_closed_loop():
    ok, line = criterion_7()
    assert ok, line


def test_criterion_8_structure():
    ok, line = criterion_8()
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for fn in CRITERIA:
        ok, line = fn()
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
