"""Hardness gadgets used as differential-test generators, with independent ground truth."""

from collections import deque
from itertools import product as cartesian

from .games import Arena, Coloring, DomainError, OmegaRegularGame, ParityAutomaton, ParityGame
from .strategies import ALL, MealyMachine

DOWN, UP, CHECK = "▼", "▲", "✓"
NEG = "¬"


class CnfFormula:
    """Clauses are lists of nonzero ints; -i is the negation of variable i."""

    def __init__(self, variables, clauses):
        self.variables = variables
        self.clauses = [list(c) for c in clauses]
        for c in self.clauses:
            if not c:
                raise DomainError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > variables:
                    raise DomainError("literal %d out of range" % lit)

    def __repr__(self):
        return "CnfFormula(%d, %r)" % (self.variables, self.clauses)


class QbfFormula:
    """Alternating prefix: x1 existential, x2 universal, and so on."""

    def __init__(self, variables, clauses):
        self.matrix = CnfFormula(variables, clauses)
        self.variables = variables

    @property
    def clauses(self):
        return self.matrix.clauses


def lit_name(lit):
    return ("x%d" % lit) if lit > 0 else (NEG + "x%d" % -lit)


def cnf_satisfiable(f):
    """Truth-table check."""
    for vals in cartesian((False, True), repeat=f.variables):
        if all(any(vals[abs(l) - 1] == (l > 0) for l in c) for c in f.clauses):
            return True
    return False


def qbf_holds(f):
    """Recursive evaluation of the alternating prefix over the truth table."""
    n = f.variables

    def go(i, vals):
        if i == n:
            return all(any(vals[abs(l) - 1] == (l > 0) for l in c) for c in f.clauses)
        branches = (go(i + 1, vals + (b,)) for b in (False, True))
        return any(branches) if i % 2 == 0 else all(branches)

    return go(0, ())


def _literal_players(n):
    out = []
    for i in range(1, n + 1):
        out += [lit_name(i), lit_name(-i)]
    return out


def _setting_module(n, owner_of_question):
    """?x_i -> x_i^s | ¬x_i^s -> next or the sink."""
    verts, owner, edges = [], {}, []
    for i in range(1, n + 1):
        q = "?x%d" % i
        verts.append(q)
        owner[q] = owner_of_question(i)
        nxt = "?x%d" % (i + 1) if i < n else "C1"
        for lit in (i, -i):
            s = lit_name(lit) + "^s"
            verts.append(s)
            owner[s] = lit_name(lit)
            edges += [(q, s), (s, nxt), (s, DOWN)]
    return verts, owner, edges


def _clause_vertex(i, lit):
    return "C%d.%s" % (i, lit_name(lit))


def sat_to_checking(f):
    """Parity game and single-state machine; every profile is an SSE iff f is unsatisfiable."""
    if not f.clauses:
        raise DomainError("formula needs at least one clause")
    n = f.variables
    lits = _literal_players(n)
    players = ["Solver"] + lits
    verts, owner, edges = _setting_module(n, lambda i: "Solver")
    verts.append(DOWN)
    owner[DOWN] = "Solver"
    edges.append((DOWN, DOWN))
    m = len(f.clauses)
    for i, clause in enumerate(f.clauses, 1):
        head = "C%d" % i
        verts.append(head)
        owner[head] = "Solver"
        nxt = "C%d" % (i + 1) if i < m else CHECK
        for lit in dict.fromkeys(clause):
            v = _clause_vertex(i, lit)
            verts.append(v)
            owner[v] = "Solver"
            edges += [(head, v), (v, nxt)]
    verts.append(CHECK)
    owner[CHECK] = "Solver"
    edges.append((CHECK, "C1"))
    arena = Arena(players, verts, owner, edges, "?x1")
    lit_of = {}
    for i, clause in enumerate(f.clauses, 1):
        for lit in clause:
            lit_of[_clause_vertex(i, lit)] = lit
    objectives = {"Solver": Coloring({v: 0 for v in verts})}
    for name in lits:
        cols = {}
        me = int(name[1:]) if name[0] != NEG else -int(name[2:])
        for v in verts:
            if v == DOWN:
                cols[v] = 0
            elif v in lit_of:
                cols[v] = 1 if lit_of[v] == -me else 3
            elif v == CHECK:
                cols[v] = 2
            else:
                cols[v] = 3
        objectives[name] = Coloring(cols)
    game = ParityGame(arena, objectives)
    table = {}
    for v in verts:
        out = DOWN if owner[v] in lits else arena.succ[v][0]
        table[("q", v)] = [("q", out)]
    return game, MealyMachine(ALL, ["q"], "q", table)


def qsat_to_existence(f):
    """Co-Büchi game where an SSE with payoff all-1 exists iff f does not hold."""
    if not f.clauses:
        raise DomainError("formula needs at least one clause")
    n = f.variables
    lits = _literal_players(n)
    players = lits + ["Solver", "Opponent"]
    verts, owner, edges = _setting_module(n, lambda i: "Solver" if i % 2 == 1 else "Opponent")
    verts.append(DOWN)
    owner[DOWN] = "Solver"
    edges.append((DOWN, DOWN))
    bad = {p: set() for p in players}
    m = len(f.clauses)
    for i, clause in enumerate(f.clauses, 1):
        head = "C%d" % i
        verts.append(head)
        owner[head] = "Solver"
        nxt = "C%d" % (i + 1) if i < m else "ph"
        for lit in dict.fromkeys(clause):
            v = _clause_vertex(i, lit)
            verts.append(v)
            owner[v] = "Solver"
            bad[lit_name(-lit)].add(v)
            edges += [(head, v), (v, nxt)]
    verts.append("ph")
    owner["ph"] = "Solver"
    edges.append(("ph", "x1?"))
    for i in range(1, n + 1):
        q = "x%d?" % i
        verts.append(q)
        owner[q] = "Solver"
        nxt = "x%d?" % (i + 1) if i < n else "pe"
        for lit in (i, -i):
            v = lit_name(lit) + "^p"
            verts.append(v)
            owner[v] = "Solver"
            bad[lit_name(-lit)].add(v)
            edges += [(q, v), (v, nxt)]
    verts.append("pe")
    owner["pe"] = "Solver"
    bad["Opponent"].add("pe")
    edges.append(("pe", "C1"))
    arena = Arena(players, verts, owner, edges, "?x1")
    objectives = {p: Coloring({v: 1 if v in bad[p] else 2 for v in verts}) for p in players}
    return ParityGame(arena, objectives), tuple(1 for _ in players)


class Dfa:
    """Complete DFA over a finite alphabet."""

    def __init__(self, states, initial, accepting, delta, alphabet=("a", "b")):
        self.states = tuple(states)
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.delta = dict(delta)
        self.alphabet = tuple(alphabet)
        for q in self.states:
            for x in self.alphabet:
                if (q, x) not in self.delta:
                    raise DomainError("incomplete DFA: no move from %s on %s" % (q, x))

    def run(self, word, q=None):
        q = self.initial if q is None else q
        for x in word:
            q = self.delta[(q, x)]
        return q

    def accepts(self, word):
        return self.run(word) in self.accepting


def intersection_witness(dfas, first=None, nonempty=True):
    """Shortest word in the intersection (restricted to words starting with `first`
    when given, and to nonempty words when `nonempty`), or None."""
    alphabet = dfas[0].alphabet
    start = tuple(d.initial for d in dfas)
    seeds = []
    if first is not None:
        seeds.append(((first,), tuple(d.delta[(q, first)] for d, q in zip(dfas, start))))
    elif nonempty:
        for x in alphabet:
            seeds.append(((x,), tuple(d.delta[(q, x)] for d, q in zip(dfas, start))))
    else:
        seeds.append(((), start))
    seen = set()
    queue = deque()
    for w, s in seeds:
        if s not in seen:
            seen.add(s)
            queue.append((w, s))
    while queue:
        w, s = queue.popleft()
        if all(q in d.accepting for d, q in zip(dfas, s)):
            return "".join(w)
        for x in alphabet:
            t = tuple(d.delta[(q, x)] for d, q in zip(dfas, s))
            if t not in seen:
                seen.add(t)
                queue.append((w + (x,), t))
    return None


def _chain(n):
    return [str(i) for i in range(1, n + 1)]


def dfa_intersection_to_checking(dfas):
    """Automata game and per-player machines: all-SSE iff the DFAs share no nonempty word."""
    if not dfas:
        raise DomainError("need at least one DFA")
    n = len(dfas)
    nums = _chain(n)
    players = nums + ["Solver", "Innocent"]
    verts = nums + ["c", "a", "b", DOWN, UP]
    owner = {v: v for v in nums}
    owner.update({"c": "Solver", "a": "Solver", "b": "Solver", DOWN: "Innocent", UP: "Innocent"})
    edges = []
    for i, v in enumerate(nums):
        edges += [(v, nums[i + 1] if i + 1 < n else "c"), (v, DOWN)]
    edges += [("c", "a"), ("c", "b")]
    for x in ("a", "b"):
        edges += [(x, "a"), (x, "b"), (x, UP)]
    edges += [(DOWN, DOWN), (UP, UP)]
    arena = Arena(players, verts, owner, edges, "1")

    objectives = {"Solver": ParityAutomaton(verts, ["s"], "s", {("s", v): "s" for v in verts}, {"s": 0})}
    delta = {}
    for v in verts:
        delta[("0", v)] = "1" if v == "c" else "0"
        delta[("1", v)] = "1"
    objectives["Innocent"] = ParityAutomaton(verts, ["0", "1"], "0", delta, {"0": 0, "1": 1})
    for i, d in enumerate(dfas):
        states = ["init", "good", "bad"] + [("q", q) for q in d.states]
        delta = {}
        colors = {"init": 1, "good": 0, "bad": 1}
        for v in verts:
            delta[("good", v)] = "good"
            delta[("bad", v)] = "bad"
            if v in nums:
                delta[("init", v)] = "init"
            elif v == "c":
                delta[("init", v)] = ("q", d.initial)
            elif v == DOWN:
                delta[("init", v)] = "good"
            else:
                delta[("init", v)] = "bad"
        for q in d.states:
            colors[("q", q)] = 1
            for v in verts:
                if v in ("a", "b"):
                    delta[(("q", q), v)] = ("q", d.delta[(q, v)])
                elif v == UP:
                    delta[(("q", q), v)] = "good" if q in d.accepting else "bad"
                else:
                    delta[(("q", q), v)] = "bad"
        objectives[nums[i]] = ParityAutomaton(verts, states, "init", delta, colors)
    game = OmegaRegularGame(arena, objectives)

    machines = []
    for p in players:
        table = {}
        for v in verts:
            if owner[v] != p:
                table[("m", v)] = [("m", None)]
            elif p in nums:
                table[("m", v)] = [("m", DOWN)]
            else:
                table[("m", v)] = [("m", arena.succ[v][0])]
        machines.append(MealyMachine(p, ["m"], "m", table))
    return game, machines


def _letter_arena(n):
    nums = _chain(n)
    players = nums + ["Solver"]
    verts = ["a", "b"] + nums + [DOWN, UP]
    owner = {"a": "Solver", "b": "Solver", DOWN: "Solver", UP: "Solver"}
    owner.update({v: v for v in nums})
    edges = []
    for x in ("a", "b"):
        edges += [(x, "a"), (x, "b"), (x, nums[0])]
    for i, v in enumerate(nums):
        edges += [(v, nums[i + 1] if i + 1 < n else DOWN), (v, UP)]
    edges += [(DOWN, DOWN), (UP, UP)]
    return Arena(players, verts, owner, edges, "a"), nums


def dfa_intersection_to_compositional(dfas):
    """Parity game and per-player machines: all-SSE iff no word of a{a,b}* lies in every DFA."""
    if not dfas:
        raise DomainError("need at least one DFA")
    n = len(dfas)
    arena, nums = _letter_arena(n)
    verts = arena.vertices
    objectives = {"Solver": Coloring({v: 0 for v in verts})}
    for v in nums:
        objectives[v] = Coloring({w: 1 if w == DOWN else 0 for w in verts})
    game = ParityGame(arena, objectives)

    machines = []
    table = {}
    for v in verts:
        if v in ("a", "b"):
            table[("s", v)] = [("s", "a")]
        elif arena.owner[v] == "Solver":
            table[("s", v)] = [("s", arena.succ[v][0])]
        else:
            table[("s", v)] = [("s", None)]
    machines.append(MealyMachine("Solver", ["s"], "s", table))
    for i, d in enumerate(dfas):
        me = nums[i]
        nxt = nums[i + 1] if i + 1 < n else DOWN
        states = [("q", q) for q in d.states] + ["GOOD", "BAD"]
        table = {}
        for s in states:
            for v in verts:
                if v in ("a", "b"):
                    t = ("q", d.delta[(s[1], v)]) if s not in ("GOOD", "BAD") else s
                elif v == nums[0] and s not in ("GOOD", "BAD"):
                    t = "GOOD" if s[1] in d.accepting else "BAD"
                else:
                    t = s
                if v == me:
                    table[(s, v)] = [(t, nxt if t == "GOOD" else UP)]
                else:
                    table[(s, v)] = [(t, None)]
        machines.append(MealyMachine(me, states, ("q", d.initial), table))
    return game, machines


def dfa_intersection_to_existence(dfas):
    """Automata game where an SSE with payoff all-1 exists iff some word of a{a,b}* is in every DFA."""
    if not dfas:
        raise DomainError("need at least one DFA")
    n = len(dfas)
    arena, nums = _letter_arena(n)
    verts = arena.vertices
    delta = {}
    for v in verts:
        delta[("init", v)] = "init" if v in ("a", "b") else ("ok" if v == nums[0] else "err")
        delta[("ok", v)] = "ok" if (v in nums[1:] or v == DOWN) else "err"
        delta[("err", v)] = "err"
    objectives = {"Solver": ParityAutomaton(verts, ["init", "ok", "err"], "init", delta,
                                            {"init": 1, "ok": 0, "err": 1})}
    for i, d in enumerate(dfas):
        states = [("q", q) for q in d.states] + ["win", "lose"]
        colors = {s: 1 for s in states}
        colors["win"] = 0
        delta = {}
        for v in verts:
            delta[("win", v)] = "lose" if v == UP else "win"
            delta[("lose", v)] = "lose"
        for q in d.states:
            for v in verts:
                if v in ("a", "b"):
                    delta[(("q", q), v)] = ("q", d.delta[(q, v)])
                elif v == nums[0]:
                    delta[(("q", q), v)] = "win" if q in d.accepting else "lose"
                else:
                    delta[(("q", q), v)] = "lose"
        objectives[nums[i]] = ParityAutomaton(verts, states, ("q", d.initial), delta, colors)
    return OmegaRegularGame(arena, objectives), tuple(1 for _ in arena.players)


def random_dfa(rng, max_states=3, alphabet=("a", "b")):
    k = rng.randint(1, max_states)
    states = list(range(k))
    delta = {(q, x): rng.randrange(k) for q in states for x in alphabet}
    accepting = [q for q in states if rng.random() < 0.5]
    return Dfa(states, 0, accepting, delta, alphabet)


def random_cnf(rng, variables, clauses, width):
    out = []
    for _ in range(clauses):
        vs = rng.sample(range(1, variables + 1), min(width, variables))
        out.append([v if rng.random() < 0.5 else -v for v in vs])
    return CnfFormula(variables, out)


def all_small_clauses(variables):
    """Every clause over the variables with at most one literal per variable."""
    out = []
    for signs in cartesian((0, 1, -1), repeat=variables):
        c = [s * (i + 1) for i, s in enumerate(signs) if s]
        if c:
            out.append(c)
    return out


def small_cnfs(variables=2):
    """Ordered pairs of small clauses; a repeated pair stands for the one-clause formula."""
    cl = all_small_clauses(variables)
    return [CnfFormula(variables, [a, b] if a != b else [a]) for a in cl for b in cl]


def random_instance(rng, max_vertices=6, max_players=3, max_states=3, max_color=3):
    """Random parity game and deterministic all-players machine."""
    nv = rng.randint(1, max_vertices)
    npl = rng.randint(1, max_players)
    players = ["p%d" % i for i in range(npl)]
    verts = ["v%d" % i for i in range(nv)]
    owner = {v: rng.choice(players) for v in verts}
    edges = [(v, w) for v in verts for w in rng.sample(verts, rng.randint(1, min(3, nv)))]
    arena = Arena(players, verts, owner, edges, verts[0])
    objectives = {p: Coloring({v: rng.randint(0, max_color) for v in verts}) for p in players}
    ns = rng.randint(1, max_states)
    states = ["q%d" % i for i in range(ns)]
    table = {(s, u): [(rng.choice(states), rng.choice(arena.succ[u]))] for s in states for u in verts}
    return ParityGame(arena, objectives), MealyMachine(ALL, states, states[0], table)
