"""Mealy machines and the product graph with deviation labels."""

from collections import deque
from itertools import product as cartesian

from .games import DomainError

ALL = "all"


class MealyMachine:
    """Finite transducer reading visited vertices.

    `table[(state, vertex)]` lists `(next_state, output)` pairs; output is
    None for read-only tuples (vertices outside the scope's ownership).
    """

    def __init__(self, scope, states, initial, table):
        self.scope = scope
        self.states = tuple(states)
        self.initial = initial
        self.table = {k: list(v) for k, v in table.items()}

    @classmethod
    def from_tuples(cls, scope, states, initial, tuples):
        table = {}
        for t in tuples:
            if len(t) == 3:
                s, u, nxt = t
                out = None
            else:
                s, u, nxt, out = t
            row = table.setdefault((s, u), [])
            if (nxt, out) not in row:
                row.append((nxt, out))
        return cls(scope, states, initial, table)

    def tuples(self, state, vertex):
        return self.table.get((state, vertex), ())

    def all_tuples(self):
        for (s, u), row in self.table.items():
            for t, w in row:
                yield (s, u, t) if w is None else (s, u, t, w)

    def __repr__(self):
        return "MealyMachine(scope=%s, %d states)" % (self.scope, len(self.states))


def owns(scope, arena, u):
    return scope == ALL or arena.owner[u] == scope


def validate_machine(arena, m):
    """Violations of completeness and edge-consistency over the arena."""
    out = []
    sset = set(m.states)
    if m.initial not in sset:
        out.append("initial state %s is not a state" % (m.initial,))
    for (s, u), row in m.table.items():
        if s not in sset:
            out.append("unknown state %s" % (s,))
        if u not in arena.index:
            out.append("unknown vertex %s" % (u,))
            continue
        for t, w in row:
            if t not in sset:
                out.append("unknown state %s" % (t,))
            if owns(m.scope, arena, u):
                if w is None:
                    out.append("missing output at (%s, %s)" % (s, u))
                elif not arena.has_edge(u, w):
                    out.append("output %s->%s is not an arena edge" % (u, w))
            elif w is not None:
                out.append("output at (%s, %s) but the vertex is not owned by %s" % (s, u, m.scope))
    for s in m.states:
        for u in arena.vertices:
            if not m.table.get((s, u)):
                out.append("incomplete at (%s, %s)" % (s, u))
    return out


def is_deterministic(m):
    return all(len(row) == 1 for row in m.table.values())


class ProductMachine:
    """Lazy all-players product of one machine per player."""

    scope = ALL

    def __init__(self, arena, machines):
        scopes = [m.scope for m in machines]
        if len(set(scopes)) != len(scopes):
            raise DomainError("overlapping machine scopes")
        if ALL in scopes:
            raise DomainError("product components must be per-player machines")
        missing = [p for p in arena.players if p not in scopes]
        extra = [p for p in scopes if p not in arena.players]
        if missing or extra:
            raise DomainError("machines must cover exactly the players (missing %s, unknown %s)" % (missing, extra))
        self.arena = arena
        self.machines = [machines[scopes.index(p)] for p in arena.players]
        self.initial = tuple(m.initial for m in self.machines)
        self._owner_pos = {p: i for i, p in enumerate(arena.players)}

    def tuples(self, state, vertex):
        k = self._owner_pos[self.arena.owner[vertex]]
        rows = [m.tuples(s, vertex) for m, s in zip(self.machines, state)]
        out = []
        for combo in cartesian(*rows):
            out.append((tuple(t for t, _ in combo), combo[k][1]))
        return out

    def materialize(self):
        """Reachable part as an explicit all-players machine."""
        states = [self.initial]
        seen = {self.initial}
        table = {}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            for u in self.arena.vertices:
                row = self.tuples(s, u)
                table[(s, u)] = row
                for t, _ in row:
                    if t not in seen:
                        seen.add(t)
                        states.append(t)
                        queue.append(t)
        return MealyMachine(ALL, states, self.initial, table)


def product_machine(arena, machines):
    return ProductMachine(arena, machines)


class ProductGraph:
    """Reachable arena x machine graph; nodes are integers 0..n-1, node 0 is initial.

    `succ[i]` lists `(j, label)` with label None for non-deviating edges and
    the deviating player's name otherwise.
    """

    def __init__(self, arena, nodes, succ, project=None):
        self.arena = arena
        self.nodes = nodes
        self.succ = succ
        self.index = {x: i for i, x in enumerate(nodes)}
        self.initial = 0
        self._project = project

    def __len__(self):
        return len(self.nodes)

    def vertex(self, i):
        return self.nodes[i][0]

    def state(self, i):
        return self.nodes[i][1]

    def label(self, i, j):
        for k, lab in self.succ[i]:
            if k == j:
                return lab
        raise KeyError((i, j))

    def has_edge(self, i, j):
        return any(k == j for k, _ in self.succ[i])

    def project(self, lasso):
        """Lasso over node ids -> lasso over arena vertices."""
        f = self._project or (lambda v: v)
        return lasso.map(lambda i: f(self.nodes[i][0]))

    def edge_count(self):
        return sum(len(s) for s in self.succ)


def build_product_graph(arena, m, project=None):
    if getattr(m, "scope", ALL) != ALL:
        raise DomainError("product graph needs an all-players machine")
    init = (arena.initial, m.initial)
    nodes = [init]
    index = {init: 0}
    succ = []
    i = 0
    while i < len(nodes):
        u, s = nodes[i]
        row = m.tuples(s, u)
        if not row:
            raise DomainError("incomplete machine at (%s, %s)" % (s, u))
        outs = set()
        for t, w in row:
            if w is None:
                raise DomainError("machine has no output at (%s, %s)" % (s, u))
            outs.add((t, w))
        edges = []
        dev = arena.owner[u]
        for t, _ in row:
            for v in arena.succ[u]:
                y = (v, t)
                j = index.get(y)
                if j is None:
                    j = len(nodes)
                    index[y] = j
                    nodes.append(y)
                edges.append((j, None if (t, v) in outs else dev))
        seen = set()
        uniq = []
        for e in edges:
            if e[0] not in seen:
                seen.add(e[0])
                uniq.append(e)
        succ.append(uniq)
        i += 1
    return ProductGraph(arena, nodes, succ, project)


def restrict_deviators(p, coalition):
    """Keep non-deviating edges and edges deviating by a coalition member; prune unreachable nodes."""
    coalition = set(coalition)
    keep = [[(j, lab) for j, lab in row if lab is None or lab in coalition] for row in p.succ]
    order = [0]
    newid = {0: 0}
    k = 0
    while k < len(order):
        for j, _ in keep[order[k]]:
            if j not in newid:
                newid[j] = len(order)
                order.append(j)
        k += 1
    nodes = [p.nodes[i] for i in order]
    succ = [[(newid[j], lab) for j, lab in keep[i]] for i in order]
    return ProductGraph(p.arena, nodes, succ, p._project)
