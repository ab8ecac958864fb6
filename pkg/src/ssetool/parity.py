"""Two-player parity games: Zielonka's solver, Emerson-Lei formulas, LAR reduction."""

from collections import deque


class TwoPlayerGame:
    """Integer-indexed two-player game; player 0 wins iff the least priority seen
    infinitely often is even."""

    def __init__(self, owner, succ, priority, names=None):
        self.owner = list(owner)
        self.succ = [list(s) for s in succ]
        self.priority = list(priority)
        self.names = names
        n = len(self.owner)
        pred = [[] for _ in range(n)]
        for u in range(n):
            for v in self.succ[u]:
                pred[v].append(u)
        self.pred = pred

    def __len__(self):
        return len(self.owner)


def attractor(g, target, player, within):
    """Vertices of `within` from which `player` forces a visit to `target`,
    with the attracting move for `player`'s own vertices."""
    attr = set(target)
    strat = {}
    count = {}
    queue = deque(attr)
    owner, succ, pred = g.owner, g.succ, g.pred
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u in attr or u not in within:
                continue
            if owner[u] == player:
                attr.add(u)
                strat[u] = v
                queue.append(u)
            else:
                c = count.get(u)
                if c is None:
                    c = sum(1 for w in succ[u] if w in within)
                c -= 1
                count[u] = c
                if c == 0:
                    attr.add(u)
                    queue.append(u)
    return attr, strat


def _solve(g, vertices):
    win = (set(), set())
    strat = {}
    V = set(vertices)
    while V:
        p = min(g.priority[v] for v in V)
        a = p % 2
        top = {v for v in V if g.priority[v] == p}
        A, sA = attractor(g, top, a, V)
        sub_win, sub_strat = _solve(g, V - A)
        if not sub_win[1 - a]:
            win[a].update(V)
            for v, w in sub_strat.items():
                if g.owner[v] == a:
                    strat[v] = w
            strat.update(sA)
            for v in top:
                if g.owner[v] == a:
                    strat[v] = next(w for w in g.succ[v] if w in V)
            break
        B, sB = attractor(g, sub_win[1 - a], 1 - a, V)
        win[1 - a].update(B)
        for v in sub_win[1 - a]:
            if g.owner[v] == 1 - a:
                strat[v] = sub_strat[v]
        for v, w in sB.items():
            if v not in strat:
                strat[v] = w
        V -= B
    return win, strat


def zielonka_solve(g):
    """Winning regions (W0, W1) and a positional strategy for each player on its region."""
    return _solve(g, range(len(g)))


class ELFormula:
    """Boolean formula over Inf-atoms.  Nodes are tuples:
    ('atom', i), ('not', f), ('and', [fs]), ('or', [fs]), ('const', b)."""

    def __init__(self, atoms, tree):
        self.atoms = [frozenset(a) for a in atoms]
        self.tree = tree

    def evaluate(self, true_atoms):
        return _eval(self.tree, true_atoms)

    def holds_on(self, inf_set):
        inf = set(inf_set)
        return self.evaluate({i for i, a in enumerate(self.atoms) if not a.isdisjoint(inf)})

    def __repr__(self):
        return "ELFormula(%d atoms, %s)" % (len(self.atoms), show(self.tree))


def _eval(t, true_atoms):
    op = t[0]
    if op == "atom":
        return t[1] in true_atoms
    if op == "not":
        return not _eval(t[1], true_atoms)
    if op == "and":
        return all(_eval(x, true_atoms) for x in t[1])
    if op == "or":
        return any(_eval(x, true_atoms) for x in t[1])
    return bool(t[1])


def show(t):
    op = t[0]
    if op == "atom":
        return "Inf%d" % t[1]
    if op == "not":
        return "!" + show(t[1])
    if op == "const":
        return "true" if t[1] else "false"
    sep = " & " if op == "and" else " | "
    return "(" + sep.join(show(x) for x in t[1]) + ")"


TRUE = ("const", True)
FALSE = ("const", False)


def f_not(a):
    if a[0] == "const":
        return ("const", not a[1])
    if a[0] == "not":
        return a[1]
    return ("not", a)


def f_and(items):
    out = []
    for x in items:
        if x == FALSE:
            return FALSE
        if x != TRUE:
            out.append(x)
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else ("and", out)


def f_or(items):
    out = []
    for x in items:
        if x == TRUE:
            return TRUE
        if x != FALSE:
            out.append(x)
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else ("or", out)


def parity_formula(inf_color, k):
    """Min-parity over colors 0..k as Inf-atoms; `inf_color(c)` gives the node for
    'color c seen infinitely often' (the max color k needs no atom)."""
    terms = []
    for c in range(0, k + 1, 2):
        lower = f_or([inf_color(d) for d in range(c)])
        if c < k:
            terms.append(f_and([inf_color(c), f_not(lower)]))
        else:
            terms.append(f_not(lower))
    return f_or(terms)


def lar_update(perm, labels):
    """Move the visited atoms to the front; return (new perm, hit index)."""
    if not labels:
        return perm, -1
    h = max(perm.index(a) for a in labels)
    front = [a for a in perm if a in labels]
    back = [a for a in perm if a not in labels]
    return tuple(front + back), h


class LarGame:
    """Parity game over (vertex, appearance record, priority) triples."""

    def __init__(self, game, nodes, index, enter, width):
        self.game = game
        self.nodes = nodes
        self.index = index
        self.enter = enter
        self.width = width

    def start_index(self, v):
        """Node id of vertex v entered with the identity record."""
        return self.index[self.enter(v, tuple(range(self.width)))]

    def step_index(self, v, perm):
        return self.index.get(self.enter(v, perm))


def lar_reduce(owner, succ, labels, formula, starts):
    """Expand a game with Emerson-Lei objective `formula` for player 0.

    `labels[v]` is the set of atom indices true at vertex v.  Only the part
    reachable from the start vertices (entered with the identity record) is
    built.  Returns a LarGame whose node tuples are (v, perm, priority).
    """
    m = len(formula.atoms)
    ident = tuple(range(m))
    top = 2 * m + 2
    cache = {}

    def verdict(atoms):
        key = frozenset(atoms)
        r = cache.get(key)
        if r is None:
            r = cache[key] = formula.evaluate(key)
        return r

    def enter(v, perm):
        new, h = lar_update(perm, labels[v])
        p = 2 * (h + 1) + (0 if verdict(new[:h + 1]) else 1)
        return (v, new, top - p)

    nodes = []
    index = {}
    for v in starts:
        x = enter(v, ident)
        if x not in index:
            index[x] = len(nodes)
            nodes.append(x)
    succ_x = []
    i = 0
    while i < len(nodes):
        v, perm, _ = nodes[i]
        row = []
        for w in succ[v]:
            y = enter(w, perm)
            j = index.get(y)
            if j is None:
                j = index[y] = len(nodes)
                nodes.append(y)
            row.append(j)
        succ_x.append(row)
        i += 1
    g = TwoPlayerGame([owner[x[0]] for x in nodes], succ_x, [x[2] for x in nodes], nodes)
    return LarGame(g, nodes, index, enter, m)
