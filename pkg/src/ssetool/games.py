"""Arenas, lassos, colorings, parity automata and the games built on them."""

from collections import deque


class DomainError(ValueError):
    pass


class Arena:
    """Turn-based graph game arena.

    Vertices keep their insertion order; successor lists follow that order,
    which makes every derived construction deterministic.
    """

    def __init__(self, players, vertices, owner, edges, initial):
        self.players = tuple(players)
        self.vertices = tuple(vertices)
        self.owner = dict(owner)
        self.initial = initial
        self.index = {v: i for i, v in enumerate(self.vertices)}
        succ = {v: [] for v in self.vertices}
        seen = set()
        for u, v in edges:
            if (u, v) in seen:
                continue
            seen.add((u, v))
            if u in succ:
                succ[u].append(v)
        order = self.index
        for u in succ:
            succ[u].sort(key=lambda w: order.get(w, len(order)))
        self.succ = succ
        self.edges = frozenset(seen)

    def successors(self, u):
        return self.succ[u]

    def has_edge(self, u, v):
        return (u, v) in self.edges

    def __repr__(self):
        return "Arena(%d players, %d vertices, %d edges)" % (
            len(self.players), len(self.vertices), len(self.edges))


def validate_arena(arena):
    """Return a list of human-readable violations (empty when valid)."""
    out = []
    vset = set(arena.vertices)
    if len(vset) != len(arena.vertices):
        out.append("duplicate vertices")
    if arena.initial not in vset:
        out.append("initial vertex %s is not a vertex" % (arena.initial,))
    players = set(arena.players)
    for v in arena.vertices:
        if v not in arena.owner:
            out.append("vertex %s has no owner" % (v,))
        elif arena.owner[v] not in players:
            out.append("vertex %s owned by unknown player %s" % (v, arena.owner[v]))
    for u, v in sorted(arena.edges, key=repr):
        if u not in vset or v not in vset:
            out.append("edge %s->%s uses an unknown vertex" % (u, v))
    for v in arena.vertices:
        if not arena.succ[v]:
            out.append("sink %s" % (v,))
    return out


class Lasso:
    """prefix . cycle^omega"""

    __slots__ = ("prefix", "cycle")

    def __init__(self, prefix, cycle):
        self.prefix = tuple(prefix)
        self.cycle = tuple(cycle)
        if not self.cycle:
            raise DomainError("lasso cycle must be nonempty")

    def __eq__(self, other):
        return isinstance(other, Lasso) and (self.prefix, self.cycle) == (other.prefix, other.cycle)

    def __hash__(self):
        return hash((self.prefix, self.cycle))

    def __repr__(self):
        return "Lasso(%r, %r)" % (self.prefix, self.cycle)

    def vertices(self):
        return self.prefix + self.cycle

    def at(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def unroll(self, n):
        return [self.at(i) for i in range(n)]

    def infinite_set(self):
        return set(self.cycle)

    def map(self, f):
        return Lasso([f(x) for x in self.prefix], [f(x) for x in self.cycle])

    def rotate(self, r):
        """Same infinite word, with r cycle letters moved into the prefix."""
        r %= len(self.cycle)
        return Lasso(self.prefix + self.cycle[:r], self.cycle[r:] + self.cycle[:r])

    def repeat(self, times):
        return Lasso(self.prefix, self.cycle * times)

    def canonical(self, key=str):
        """Shortest equivalent lasso, cycle starting at its least vertex by `key`.

        The prefix is shrunk while its last letter equals the cycle's last
        letter, the cycle is reduced to its primitive root, then rotated so
        the least vertex comes first (the prefix grows accordingly).
        """
        prefix, cycle = list(self.prefix), list(self.cycle)
        n = len(cycle)
        for d in range(1, n + 1):
            if n % d == 0 and cycle[:d] * (n // d) == cycle:
                cycle = cycle[:d]
                break
        while prefix and prefix[-1] == cycle[-1]:
            prefix.pop()
            cycle = [cycle[-1]] + cycle[:-1]
        best = min(range(len(cycle)), key=lambda i: (key(cycle[i]), i))
        return Lasso(prefix + cycle[:best], cycle[best:] + cycle[:best])

    def is_valid_in(self, has_edge, start=None):
        seq = self.vertices()
        if start is not None and seq[0] != start:
            return False
        for a, b in zip(seq, seq[1:]):
            if not has_edge(a, b):
                return False
        return has_edge(self.cycle[-1], self.cycle[0])


class Coloring:
    """Vertex (or state) to natural-number color map."""

    def __init__(self, colors, k=None):
        self.colors = dict(colors)
        for x, c in self.colors.items():
            if not isinstance(c, int) or c < 0:
                raise DomainError("color of %s must be a natural number" % (x,))
        top = max(self.colors.values(), default=0)
        self.k = top + 1 if k is None else k
        if top >= self.k:
            raise DomainError("color %d outside the declared range %d" % (top, self.k))

    def __getitem__(self, x):
        try:
            return self.colors[x]
        except KeyError:
            raise DomainError("no color for %s" % (x,)) from None

    def __contains__(self, x):
        return x in self.colors

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.colors == other.colors

    def __repr__(self):
        return "Coloring(%r)" % (self.colors,)

    def max_color(self):
        return max(self.colors.values(), default=0)

    def normalized(self):
        """Shift colors down to start at 0 or 1 without changing any parity outcome."""
        if not self.colors:
            return Coloring({})
        lo = min(self.colors.values())
        shift = lo if lo % 2 == 0 else lo - 1
        return Coloring({x: c - shift for x, c in self.colors.items()})

    def complement(self):
        return Coloring({x: c + 1 for x, c in self.colors.items()})

    def wins(self, inf_set):
        return min(self[x] for x in inf_set) % 2 == 0


def lasso_parity_payoff(coloring, lasso):
    """True iff the least color seen infinitely often is even."""
    return coloring.wins(lasso.cycle)


class ParityAutomaton:
    """Deterministic complete parity automaton over a vertex alphabet."""

    def __init__(self, alphabet, states, initial, delta, colors):
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        self.initial = initial
        self.delta = dict(delta)
        self.coloring = colors if isinstance(colors, Coloring) else Coloring(colors)

    def validate(self):
        out = []
        sset = set(self.states)
        if self.initial not in sset:
            out.append("initial state %s is not a state" % (self.initial,))
        for s in self.states:
            if s not in self.coloring:
                out.append("state %s has no color" % (s,))
            for x in self.alphabet:
                t = self.delta.get((s, x))
                if t is None:
                    out.append("no transition from %s on %s" % (s, x))
                elif t not in sset:
                    out.append("transition %s --%s--> unknown state %s" % (s, x, t))
        return out

    def step(self, s, x):
        try:
            return self.delta[(s, x)]
        except KeyError:
            raise DomainError("letter %s is not in the automaton alphabet" % (x,)) from None

    def run(self, word, s=None):
        s = self.initial if s is None else s
        for x in word:
            s = self.step(s, x)
        return s


def run_lasso(a, lasso):
    """State lasso of automaton `a` on `lasso` (states after reading each letter)."""
    states = []
    s = a.initial
    for x in lasso.prefix:
        s = a.step(s, x)
        states.append(s)
    seen = {}
    n = len(lasso.cycle)
    pos = 0
    cyc = []
    while True:
        s = a.step(s, lasso.cycle[pos])
        key = (s, pos)
        if key in seen:
            start = seen[key]
            return Lasso(states + cyc[:start], cyc[start:])
        seen[key] = len(cyc)
        cyc.append(s)
        pos = (pos + 1) % n


def automaton_accepts_lasso(a, lasso):
    letters = set(a.alphabet)
    for x in lasso.vertices():
        if x not in letters:
            raise DomainError("letter %s is not in the automaton alphabet" % (x,))
    return lasso_parity_payoff(a.coloring, run_lasso(a, lasso))


class ParityGame:
    def __init__(self, arena, objectives, correctness=None):
        self.arena = arena
        self.objectives = dict(objectives)
        self.correctness = correctness
        missing = [p for p in arena.players if p not in self.objectives]
        if missing:
            raise DomainError("no objective for players %s" % missing)
        for p, col in self.objectives.items():
            for v in arena.vertices:
                col[v]
        if correctness is not None:
            for v in arena.vertices:
                correctness[v]

    def colorings(self):
        return [self.objectives[p] for p in self.arena.players]

    def payoff(self, lasso):
        return tuple(int(lasso_parity_payoff(self.objectives[p], lasso)) for p in self.arena.players)

    def correct(self, lasso):
        return self.correctness is None or lasso_parity_payoff(self.correctness, lasso)


class OmegaRegularGame:
    def __init__(self, arena, objectives, correctness=None):
        self.arena = arena
        self.objectives = dict(objectives)
        self.correctness = correctness
        missing = [p for p in arena.players if p not in self.objectives]
        if missing:
            raise DomainError("no objective for players %s" % missing)
        letters = set(arena.vertices)
        autos = list(self.objectives.values()) + ([correctness] if correctness else [])
        for a in autos:
            if set(a.alphabet) != letters:
                raise DomainError("automaton alphabet differs from the arena vertices")

    def payoff(self, lasso):
        return tuple(int(automaton_accepts_lasso(self.objectives[p], lasso)) for p in self.arena.players)

    def correct(self, lasso):
        return self.correctness is None or automaton_accepts_lasso(self.correctness, lasso)


class SyncProduct(ParityGame):
    """Parity game on (vertex, automata states) pairs; remembers the automata."""

    def __init__(self, arena, objectives, correctness, automata, base):
        super().__init__(arena, objectives, correctness)
        self.automata = automata
        self.base = base

    def lift(self, v, prev=None):
        """Product vertex reached by reading `v` after product vertex `prev`."""
        states = [a.initial for a in self.automata] if prev is None else prev[1]
        return (v, tuple(a.step(s, v) for a, s in zip(self.automata, states)))


def synchronized_product(g):
    """Reachable part of the arena times every objective (and correctness) automaton."""
    ar = g.arena
    autos = [g.objectives[p] for p in ar.players]
    if g.correctness is not None:
        autos.append(g.correctness)
    init = (ar.initial, tuple(a.step(a.initial, ar.initial) for a in autos))
    order = [init]
    seen = {init}
    edges = []
    queue = deque([init])
    while queue:
        x = queue.popleft()
        v, ss = x
        for w in ar.succ[v]:
            y = (w, tuple(a.step(s, w) for a, s in zip(autos, ss)))
            edges.append((x, y))
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    owner = {x: ar.owner[x[0]] for x in order}
    arena = Arena(ar.players, order, owner, edges, init)
    objectives = {}
    for i, p in enumerate(ar.players):
        col = autos[i].coloring
        objectives[p] = Coloring({x: col[x[1][i]] for x in order})
    corr = None
    if g.correctness is not None:
        col = g.correctness.coloring
        corr = Coloring({x: col[x[1][-1]] for x in order})
    return SyncProduct(arena, objectives, corr, autos, g)


def vertex_automaton(arena, coloring):
    """Automaton remembering the last vertex read, colored by the given vertex coloring."""
    init = ("start",)
    states = [init] + [("at", v) for v in arena.vertices]
    delta = {}
    for s in states:
        for v in arena.vertices:
            delta[(s, v)] = ("at", v)
    colors = {("at", v): coloring[v] for v in arena.vertices}
    colors[init] = coloring.max_color() | 1
    return ParityAutomaton(arena.vertices, states, init, delta, colors)


def as_omega_regular(game):
    objectives = {p: vertex_automaton(game.arena, c) for p, c in game.objectives.items()}
    corr = None
    if game.correctness is not None:
        corr = vertex_automaton(game.arena, game.correctness)
    return OmegaRegularGame(game.arena, objectives, corr)


def universal_automaton(arena, color=0):
    return ParityAutomaton(arena.vertices, ["q"], "q", {("q", v): "q" for v in arena.vertices}, {"q": color})


def bits(payoff):
    return "".join(str(int(b)) for b in payoff)


def parse_bits(text, n):
    if len(text) != n or any(c not in "01" for c in text):
        raise DomainError("payoff must be a bitstring of length %d" % n)
    return tuple(int(c) for c in text)
