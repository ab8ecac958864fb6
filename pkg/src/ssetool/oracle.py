"""Brute-force oracles, kept independent of the product-graph and solver code."""

from collections import deque
from itertools import product as cartesian

from .games import DomainError


class OracleVerdict:
    def __init__(self, outcome, info=None):
        self.outcome = outcome
        self.info = info or {}

    @property
    def all_sse(self):
        return self.outcome == "all-SSE"

    def __repr__(self):
        return "OracleVerdict(%s, %r)" % (self.outcome, self.info)


def _single(m, s, u):
    row = list(m.tuples(s, u))
    if len(row) != 1:
        raise DomainError("oracle needs a deterministic machine (state %s, vertex %s)" % (s, u))
    return row[0]


def _compliant_play(arena, m):
    """Simulate the machine from the initial vertex until a (vertex, state) repeats."""
    seq = []
    pos = {}
    x = (arena.initial, m.initial)
    while x not in pos:
        pos[x] = len(seq)
        seq.append(x)
        u, s = x
        t, w = _single(m, s, u)
        x = (w, t)
    return seq, pos[x]


def oracle_witness_search(game, m, bound=None):
    """Exhaustive harmful-deviation search for a deterministic all-players machine.

    For every position of the compliant play and every deviating move there,
    explore continuations while tracking the deviator set, then enumerate
    closed walks tracking the least color per player seen on the walk.
    `bound` is accepted for interface compatibility; the walk enumeration is
    exact, so no length cut-off is needed.
    """
    arena = game.arena
    players = list(arena.players)
    n = len(players)
    pidx = {p: i for i, p in enumerate(players)}
    cols = [game.objectives[p] for p in players]

    def colors(v):
        return tuple(c[v] for c in cols)

    seq, loop = _compliant_play(arena, m)
    cyc_mins = [min(colors(u)[i] for u, _ in seq[loop:]) for i in range(n)]
    x = tuple(int(c % 2 == 0) for c in cyc_mins)

    def step(node):
        u, s = node
        t, w = _single(m, s, u)
        for v in arena.succ[u]:
            yield (v, t), (None if v == w else pidx[arena.owner[u]])

    def bit(d, i):
        return (d >> i) & 1

    def harmful(mins, dev):
        y = [int(c % 2 == 0) for c in mins]
        if any(bit(dev, i) and y[i] < x[i] for i in range(n)):
            return None
        for j in range(n):
            if not bit(dev, j) and x[j] == 1 and y[j] == 0:
                return j, y
        return None

    cycle_memo = {}

    def cycles_from(c, dev):
        key = (c, dev)
        if key in cycle_memo:
            return cycle_memo[key]
        start = (c, colors(c[0]), dev)
        seen = {start}
        queue = deque([start])
        found = set()
        while queue:
            node, mins, d = queue.popleft()
            for nxt, lab in step(node):
                d2 = d if lab is None else d | (1 << lab)
                m2 = tuple(min(a, b) for a, b in zip(mins, colors(nxt[0])))
                if nxt == c:
                    found.add((m2, d2))
                st = (nxt, m2, d2)
                if st not in seen:
                    seen.add(st)
                    queue.append(st)
        cycle_memo[key] = found
        return found

    for t, (u, s) in enumerate(seq):
        _, w = _single(m, s, u)
        i = pidx[arena.owner[u]]
        nt, _ = _single(m, s, u)
        for v in arena.succ[u]:
            if v == w:
                continue
            start = ((v, nt), 1 << i)
            seen = {start}
            queue = deque([start])
            while queue:
                node, d = queue.popleft()
                for mins, d2 in sorted(cycles_from(node, d)):
                    hit = harmful(mins, d2)
                    if hit is not None:
                        j, y = hit
                        return OracleVerdict("not-SSE", {
                            "position": t, "deviation": (u, v), "harmed": players[j],
                            "deviators": [players[k] for k in range(n) if bit(d2, k)],
                            "alpha_payoff": x, "beta_payoff": tuple(y)})
                for nxt, lab in step(node):
                    d2 = d if lab is None else d | (1 << lab)
                    st = (nxt, d2)
                    if st not in seen:
                        seen.add(st)
                        queue.append(st)
    return OracleVerdict("all-SSE", {"alpha_payoff": x})


def _functional_winner(vertices, choice, priority, start):
    """Winner (0 even / 1 odd) of the unique play from `start` in a functional graph."""
    seen = {}
    v = start
    path = []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = choice[v]
    return min(priority[u] for u in path[seen[v]:]) % 2


def oracle_solve_parity(vertices, owner, succ, priority, start, limit=10 ** 6):
    """Winner at `start` of a min-parity game by positional strategy enumeration."""
    mine = [v for v in vertices if owner[v] == 0]
    theirs = [v for v in vertices if owner[v] == 1]
    size = 1
    for v in vertices:
        size *= len(succ[v])
        if size > limit:
            raise DomainError("strategy space too large for enumeration")
    for s0 in cartesian(*[succ[v] for v in mine]):
        choice = dict(zip(mine, s0))
        ok = True
        for s1 in cartesian(*[succ[v] for v in theirs]):
            choice.update(zip(theirs, s1))
            if _functional_winner(vertices, choice, priority, start) == 1:
                ok = False
                break
        if ok:
            return 0
    return 1
