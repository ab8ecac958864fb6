"""Fixed-payoff SSE existence through the deviator game and its region recursion."""

from collections import deque

from .games import DomainError, OmegaRegularGame, SyncProduct, synchronized_product
from .parity import (ELFormula, FALSE, f_and, f_not, f_or, lar_reduce,
                     parity_formula, zielonka_solve)
from .strategies import ALL, MealyMachine

PROVER, CHALLENGER = 1, 0


class DeviatorGame:
    """Prover vertices (u, D) and Challenger vertices (u, v, D), D a frozenset of players."""

    def __init__(self, game, target):
        self.game = game
        self.arena = game.arena
        self.target = tuple(target)
        if len(self.target) != len(self.arena.players):
            raise DomainError("target payoff must have one bit per player")
        self.initial = (self.arena.initial, frozenset())

    def prover_moves(self, x):
        u, d = x
        return [(u, v, d) for v in self.arena.succ[u]]

    def challenger_moves(self, y):
        u, v, d = y
        d2 = d | {self.arena.owner[u]}
        out = [(v, d)]
        for w in self.arena.succ[u]:
            if w != v:
                out.append((w, d2))
        return out

    def explore(self):
        """Reachable Prover vertices and, per deviator set, its entry vertices."""
        seen = {self.initial}
        order = [self.initial]
        entries = {frozenset(): [self.arena.initial]}
        queue = deque([self.initial])
        while queue:
            x = queue.popleft()
            for y in self.prover_moves(x):
                for z in self.challenger_moves(y):
                    if z[1] != x[1]:
                        lst = entries.setdefault(z[1], [])
                        if z[0] not in lst:
                            lst.append(z[0])
                    if z not in seen:
                        seen.add(z)
                        order.append(z)
                        queue.append(z)
        return order, entries


def build_deviator_game(game, target):
    return DeviatorGame(game, target)


def _top(col):
    return max(col.max_color(), 1)


def challenger_objective(players, d, target, has_corr):
    """Challenger's winning condition as a formula over Par(player) placeholders.

    Returns a tree whose leaves are ('par', name); `name` is a player or 'Corr'.
    """
    def par(p):
        return ("par", p)

    win = [p for p, b in zip(players, target) if b]
    lose = [p for p, b in zip(players, target) if not b]
    if not d:
        terms = [f_not(par(p)) for p in win] + [par(p) for p in lose]
        if has_corr:
            terms.append(f_not(par("Corr")))
        return f_or(terms)
    outside = [p for p in win if p not in d]
    inside = [p for p in win if p in d]
    return f_and([f_or([f_not(par(p)) for p in outside])] + [par(p) for p in inside])


def _substitute(t, fn):
    op = t[0]
    if op == "par":
        return fn(t[1])
    if op == "not":
        return f_not(_substitute(t[1], fn))
    if op == "and":
        return f_and([_substitute(x, fn) for x in t[1]])
    if op == "or":
        return f_or([_substitute(x, fn) for x in t[1]])
    return t


def _mentioned(t, acc):
    if t[0] == "par":
        acc.append(t[1])
    elif t[0] == "not":
        _mentioned(t[1], acc)
    elif t[0] in ("and", "or"):
        for x in t[1]:
            _mentioned(x, acc)
    return acc


class Region:
    def __init__(self, d, lar, solution, labels_of, won):
        self.d = d
        self.lar = lar
        self.solution = solution
        self.labels_of = labels_of
        self.won = won


class ExistVerdict:
    def __init__(self, exists, regions, game, target, stats):
        self.exists = exists
        self.regions = regions
        self.game = game
        self.target = target
        self.stats = stats

    @property
    def outcome(self):
        return "exists" if self.exists else "not-exists"

    def __repr__(self):
        return "ExistVerdict(%s)" % self.outcome


def _colorings(game):
    cols = {p: game.objectives[p] for p in game.arena.players}
    if game.correctness is not None:
        cols["Corr"] = game.correctness
    return cols


def exists_sse(game, target, max_nodes=None):
    """Decide whether an SSE with payoff `target` (and correctness, if the game has
    a correctness objective) exists."""
    target = tuple(int(b) for b in target)
    arena = game.arena
    players = list(arena.players)
    dg = DeviatorGame(game, target)
    prover_nodes, entries = dg.explore()
    by_d = {}
    for u, d in prover_nodes:
        by_d.setdefault(d, []).append(u)
    order = sorted(by_d, key=lambda d: (-len(d), sorted(d)))
    cols = {p: c.normalized() for p, c in _colorings(game).items()}
    tops = {p: _top(c) for p, c in cols.items()}
    has_corr = game.correctness is not None
    regions = {}
    stats = {"prover_vertices": len(prover_nodes), "regions": len(order), "lar_vertices": 0}

    for d in order:
        shape = challenger_objective(players, d, target, has_corr)
        names = []
        for p in _mentioned(shape, []):
            if p not in names:
                names.append(p)
        # region vertices: prover ('P', u), challenger ('C', u, v), leaves ('L', w, D')
        verts = []
        vid = {}

        def add(x):
            i = vid.get(x)
            if i is None:
                i = vid[x] = len(verts)
                verts.append(x)
            return i

        for u in by_d[d]:
            add(("P", u))
        succ = {}
        k = 0
        while k < len(verts):
            x = verts[k]
            k += 1
            if x[0] == "P":
                u = x[1]
                succ[x] = [add(("C", u, v)) for v in arena.succ[u]]
            elif x[0] == "C":
                _, u, v = x
                row = []
                for w, d2 in dg.challenger_moves((u, v, d)):
                    row.append(add(("P", w)) if d2 == d else add(("L", w, d2)))
                succ[x] = row
            else:
                succ[x] = [vid[x]]

        # leaf colors: 0 = wins, 1 = loses
        def leaf_color(x, p):
            _, w, d2 = x
            prover_wins = regions[d2].won.get(w, False)
            if p == "Corr":
                return 0 if prover_wins else 1
            if prover_wins:
                return 0 if target[players.index(p)] else 1
            return 0 if p in d2 else 1

        def color_at(x, p):
            if x[0] == "P":
                return cols[p][x[1]]
            return leaf_color(x, p)

        atom_sets = {}
        for p in names:
            for c in range(tops[p]):
                s = frozenset(i for i, x in enumerate(verts) if x[0] != "C" and color_at(x, p) == c)
                atom_sets[(p, c)] = s
        atoms = []
        atom_id = {}
        key_to_atom = {}
        for key, s in atom_sets.items():
            if not s:
                continue
            if s not in atom_id:
                atom_id[s] = len(atoms)
                atoms.append(s)
            key_to_atom[key] = atom_id[s]

        def inf_color_of(p):
            def inf(c):
                a = key_to_atom.get((p, c))
                return FALSE if a is None else ("atom", a)
            return inf

        tree = _substitute(shape, lambda p: parity_formula(inf_color_of(p), tops[p]))
        formula = ELFormula(atoms, tree)
        labels = [set() for _ in verts]
        for a, s in enumerate(atoms):
            for i in s:
                labels[i].add(a)
        labels = [frozenset(x) for x in labels]
        for i, x in enumerate(verts):
            if x[0] == "L":
                expect_challenger = not regions[x[2]].won.get(x[1], False)
                if formula.evaluate(labels[i]) != expect_challenger:
                    raise AssertionError("leaf encoding disagrees with the solved region")

        owner = [PROVER if x[0] == "P" else CHALLENGER for x in verts]
        succ_list = [succ[x] for x in verts]
        starts = [vid[("P", w)] for w in entries.get(d, [])]
        lar = lar_reduce(owner, succ_list, labels, formula, starts)
        stats["lar_vertices"] += len(lar.nodes)
        if max_nodes is not None and stats["lar_vertices"] > max_nodes:
            raise DomainError("deviator game exceeds %d vertices" % max_nodes)
        (w0, w1), strat = zielonka_solve(lar.game)
        won = {w: lar.start_index(vid[("P", w)]) in w1 for w in entries.get(d, [])}
        regions[d] = Region(d, lar, (w0, w1, strat), (verts, vid, labels), won)

    exists = regions[frozenset()].won[arena.initial]
    return ExistVerdict(exists, regions, game, target, stats)



def exists_sse_omega(game, target, max_nodes=None):
    """Existence for automata objectives, solved on the synchronized product."""
    if not isinstance(game, OmegaRegularGame):
        raise DomainError("expected an omega-regular game")
    return exists_sse(synchronized_product(game), target, max_nodes)


class _Reader:
    """Tracks Prover's strategy along a play; one instance drives machine extraction."""

    def __init__(self, verdict):
        self.v = verdict
        g = verdict.game
        self.game = g
        self.sync = isinstance(g, SyncProduct)
        self.base_arena = g.base.arena if self.sync else g.arena

    def lift(self, prev, x):
        if self.sync:
            return self.game.lift(x, prev)
        return x

    def project(self, gv):
        return gv[0] if self.sync else gv

    def _choose(self, region, j, gv):
        w0, w1, strat = region.solution
        nxt = strat.get(j) if j in w1 else None
        if nxt is None:
            return self.game.arena.succ[gv][0]
        verts = region.labels_of[0]
        return verts[region.lar.nodes[nxt][0]][2]

    def start(self, x):
        if x != self.base_arena.initial:
            return None
        gv = self.lift(None, x)
        return self._enter(frozenset(), gv, None)

    def _enter(self, d, gv, perm):
        region = self.v.regions[d]
        verts, vid, labels = region.labels_of
        i = vid[("P", gv)]
        j = region.lar.start_index(i) if perm is None else region.lar.step_index(i, perm)
        if j is None:
            return None
        node = region.lar.nodes[j]
        out = self._choose(region, j, gv)
        return (d, node[1], node[2], gv, out)

    def read(self, state, x):
        d, perm, _, gu, gv_out = state
        if x not in self.base_arena.succ[self.project(gu)]:
            return None
        g = self.lift(gu, x)
        if g == gv_out:
            return self._enter(d, g, perm)
        d2 = d | {self.game.arena.owner[gu]}
        if d2 == d:
            return self._enter(d, g, perm)
        return self._enter(d2, g, None)


def extract_protocol_machine(verdict):
    """Deterministic all-players machine following Prover's winning strategy.

    States remember the deviator set, the appearance record and the last
    proposal; reads that cannot happen in the product go to a fallback state.
    """
    if not verdict.exists:
        raise DomainError("no SSE with the requested payoff exists")
    rd = _Reader(verdict)
    arena = rd.base_arena
    init, fallback = ("init",), ("fallback",)
    states = [init, fallback]
    seen = {init, fallback}
    table = {}
    queue = deque([init])
    first = {u: arena.succ[u][0] for u in arena.vertices}
    for u in arena.vertices:
        table[(fallback, u)] = [(fallback, first[u])]
    while queue:
        s = queue.popleft()
        for x in arena.vertices:
            nxt = rd.start(x) if s == init else rd.read(s, x)
            if nxt is None:
                table[(s, x)] = [(fallback, first[x])]
                continue
            table[(s, x)] = [(nxt, rd.project(nxt[4]))]
            if nxt not in seen:
                seen.add(nxt)
                states.append(nxt)
                queue.append(nxt)
    return MealyMachine(ALL, states, init, table)
