from itertools import combinations

from ssetool.games import Lasso
from ssetool.streett import can_reach, reachable, satisfies, sccs, streett_nonempty


def random_graph(rng, n):
    return [rng.sample(range(n), rng.randint(1, min(2, n))) for _ in range(n)]


def closure(succ, n):
    reach = [set() for _ in range(n)]
    for v in range(n):
        todo = list(succ[v])
        while todo:
            w = todo.pop()
            if w not in reach[v]:
                reach[v].add(w)
                todo.extend(succ[w])
    return reach


def brute_nonempty(succ, start, pairs):
    """Some strongly connected reachable set (with a cycle) satisfies every pair."""
    n = len(succ)
    reach = closure(succ, n)
    live = {start} | reach[start]
    for k in range(1, len(live) + 1):
        for s in combinations(sorted(live), k):
            ss = set(s)
            sub = [[w for w in succ[v] if w in ss] for v in range(n)]
            inner = closure(sub, n)
            if all(ss <= inner[v] for v in ss):
                if all(not (r & ss) or (g & ss) for r, g in pairs):
                    return True
    return False


def test_sccs_match_mutual_reachability(rng):
    for _ in range(200):
        n = rng.randint(1, 7)
        succ = random_graph(rng, n)
        reach = closure(succ, n)
        comps = sccs(range(n), succ)
        assert sorted(v for c in comps for v in c) == list(range(n))
        for c in comps:
            for v in c:
                for w in c:
                    assert v == w or (w in reach[v] and v in reach[w])


def test_sccs_reverse_topological(rng):
    for _ in range(100):
        n = rng.randint(1, 7)
        succ = random_graph(rng, n)
        comps = sccs(range(n), succ)
        pos = {v: i for i, c in enumerate(comps) for v in c}
        for v in range(n):
            for w in succ[v]:
                assert pos[w] <= pos[v]


def test_sccs_deep_chain_is_iterative():
    n = 20000
    succ = [[i + 1] for i in range(n - 1)] + [[0]]
    assert len(sccs(range(n), succ)) == 1


def test_reachable_and_can_reach():
    succ = [[1], [2], [2], [0]]
    assert set(reachable(succ, [0])) == {0, 1, 2}
    assert can_reach(succ, range(4), [0]) == {0, 3}


def test_single_pair_example():
    # 0 -> 1 -> 0 and 1 -> 2 -> 2; Inf{1} must imply Inf{2}
    succ = [[1], [0, 2], [2]]
    las = streett_nonempty(succ, 0, [({1}, {2})])
    assert las is not None and set(las.cycle) == {2}
    assert streett_nonempty(succ, 0, [({2}, {0})]) is not None
    assert streett_nonempty([[1], [0]], 0, [({0}, {5})]) is None


def test_satisfies():
    assert satisfies(Lasso([0], [1, 2]), [({1}, {2})])
    assert not satisfies(Lasso([0], [1]), [({1}, {2})])
    assert satisfies(Lasso([], [3]), [({1}, {2})])


def test_streett_nonempty_matches_brute_force(rng):
    for _ in range(300):
        n = rng.randint(1, 6)
        succ = random_graph(rng, n)
        pairs = []
        for _ in range(rng.randint(0, 3)):
            r = {v for v in range(n) if rng.random() < 0.4}
            g = {v for v in range(n) if rng.random() < 0.3}
            pairs.append((r, g))
        las = streett_nonempty(succ, 0, pairs)
        assert (las is not None) == brute_nonempty(succ, 0, pairs)
        if las is not None:
            assert las.is_valid_in(lambda a, b: b in succ[a], start=0)
            assert satisfies(las, pairs)
