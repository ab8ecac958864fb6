"""Protocol challenges and their compilation to Boolean games."""

from ..check import check_product, outcome_search, product_for, streett_pairs_for_payoff
from ..exist import exists_sse, extract_protocol_machine
from ..games import (DomainError, OmegaRegularGame, ParityAutomaton, ParityGame,
                     synchronized_product, vertex_automaton)
from ..parity import TwoPlayerGame, zielonka_solve
from ..streett import streett_nonempty
from . import templates


class ProtocolChallenge:
    """Agents are the arena's players.  `wronging[a]` is won (parity sense)
    exactly on the outcomes where agent a is wronged; a missing or None entry
    means a is never wronged.  `compliance` and `correctness` are won on the
    compliant and the correct outcomes."""

    def __init__(self, arena, wronging, correctness=None, compliance=None,
                 infrastructure=None, name="challenge"):
        self.arena = arena
        self.agents = tuple(arena.players)
        self.wronging = {a: wronging.get(a) for a in self.agents}
        unknown = [a for a in wronging if a not in self.agents]
        if unknown:
            raise DomainError("wronging condition for unknown agents %s" % unknown)
        self.correctness = correctness
        self.compliance = compliance
        self.infrastructure = infrastructure
        self.name = name
        if infrastructure is not None:
            if infrastructure not in self.agents:
                raise DomainError("infrastructure %s is not an agent" % infrastructure)
            if self.wronging[infrastructure] is not None:
                raise DomainError("the infrastructure cannot be wronged")
        if compliance is not None and infrastructure is None:
            raise DomainError("a compliance condition needs a designated infrastructure agent")

    def objectives(self):
        objs = [o for o in self.wronging.values() if o is not None]
        objs += [o for o in (self.correctness, self.compliance) if o is not None]
        return objs

    def uses_automata(self):
        return any(isinstance(o, ParityAutomaton) for o in self.objectives())


class ObjectiveGraph:
    """Arena times the automata among `objs`; one node->color map per objective."""

    def __init__(self, arena, objs):
        autos = [i for i, o in enumerate(objs) if isinstance(o, ParityAutomaton)]

        def enter(v, states):
            return (v, tuple(objs[i].step(s, v) for i, s in zip(autos, states)))

        init = enter(arena.initial, [objs[i].initial for i in autos])
        self.nodes = [init]
        index = {init: 0}
        self.succ = []
        k = 0
        while k < len(self.nodes):
            v, ss = self.nodes[k]
            row = []
            for w in arena.succ[v]:
                y = enter(w, ss)
                j = index.get(y)
                if j is None:
                    j = index[y] = len(self.nodes)
                    self.nodes.append(y)
                row.append(j)
            self.succ.append(row)
            k += 1
        self.owner = [arena.owner[v] for v, _ in self.nodes]
        self.colorings = []
        for i, o in enumerate(objs):
            if isinstance(o, ParityAutomaton):
                pos = autos.index(i)
                self.colorings.append({n: o.coloring[x[1][pos]] for n, x in enumerate(self.nodes)})
            else:
                self.colorings.append({n: o[x[0]] for n, x in enumerate(self.nodes)})

    def lasso(self, target):
        """Lasso (over arena vertices) winning exactly the objectives marked 1
        and losing those marked 0, or None."""
        found = streett_nonempty(self.succ, 0, streett_pairs_for_payoff(self.colorings, target))
        return None if found is None else found.map(lambda n: self.nodes[n][0])


def check_compliance_enforceable(c):
    """True iff the infrastructure can force Com whatever the others do."""
    g = ObjectiveGraph(c.arena, [c.compliance])
    owner = [0 if p == c.infrastructure else 1 for p in g.owner]
    col = g.colorings[0]
    tp = TwoPlayerGame(owner, g.succ, [col[i] for i in range(len(g.nodes))])
    (w0, _), _ = zielonka_solve(tp)
    return 0 in w0


def check_disjointness(c):
    """Agents a for which some play is both correct and wrongs a."""
    if c.correctness is None:
        return []
    bad = []
    for a, w in c.wronging.items():
        if w is None:
            continue
        if ObjectiveGraph(c.arena, [w, c.correctness]).lasso([1, 1]) is not None:
            bad.append(a)
    return bad


def _as_automaton(arena, o):
    return o if isinstance(o, ParityAutomaton) else vertex_automaton(arena, o)


def _complement_automaton(a):
    return ParityAutomaton(a.alphabet, a.states, a.initial, a.delta, a.coloring.complement())


def compile_challenge(c):
    """(game, target, correctness): agent a gets payoff 1 iff not wronged (or,
    under compliance, iff not wronged or the outcome is non-compliant); the
    infrastructure gets 1 iff the outcome is compliant.  Target is all-1."""
    arena = c.arena
    if c.compliance is not None and not check_compliance_enforceable(c):
        raise DomainError("the infrastructure cannot enforce the compliance condition")
    bad = check_disjointness(c)
    if bad:
        raise DomainError("some correct outcome wrongs %s" % ", ".join(map(str, bad)))
    target = tuple(1 for _ in c.agents)
    if not c.uses_automata():
        objectives = {}
        for a in c.agents:
            w = c.wronging[a]
            if c.compliance is not None and a == c.infrastructure:
                objectives[a] = c.compliance
            elif w is None:
                objectives[a] = templates.always(arena)
            elif c.compliance is None:
                objectives[a] = w.complement()
            else:
                objectives[a] = templates.union(arena, [w.complement(), c.compliance.complement()])
        game = ParityGame(arena, objectives, c.correctness)
        return game, target, game.correctness
    if c.compliance is not None:
        raise DomainError("compliance with automaton objectives is not supported; use colorings")
    objectives = {}
    for a in c.agents:
        w = c.wronging[a]
        if w is None:
            objectives[a] = _as_automaton(arena, templates.always(arena))
        else:
            objectives[a] = _complement_automaton(_as_automaton(arena, w))
    corr = None if c.correctness is None else _as_automaton(arena, c.correctness)
    game = OmegaRegularGame(arena, objectives, corr)
    return game, target, corr


class SafetyVerdict:
    """`safe` means every outcome of the protocol pays every agent 1 and no coalition
    has a harmful deviation; `correct` says whether every outcome of the protocol
    satisfies the correctness condition (None when there is none)."""

    def __init__(self, safe, correct, failure, witness, check, stats, incorrect_outcome=None):
        self.safe = safe
        self.correct = correct
        self.incorrect_outcome = incorrect_outcome
        self.failure = failure
        self.witness = witness
        self.check = check
        self.stats = stats

    @property
    def outcome(self):
        return "SAFE" if self.safe else "UNSAFE"

    @property
    def positive(self):
        return self.safe and self.correct is not False

    def __repr__(self):
        return "SafetyVerdict(%s, correct=%s, failure=%s)" % (self.outcome, self.correct, self.failure)


def protocol_graph(c, m, game=None):
    """(game on which the product lives, product graph) for challenge c and machine(s) m."""
    if game is None:
        game = compile_challenge(c)[0]
    return product_for(game, m)


def verify_protocol(c, m):
    game, target, corr = compile_challenge(c)
    g, graph = protocol_graph(c, m, game)
    players = list(g.arena.players)
    n = len(players)
    stats = {"product_nodes": len(graph), "product_edges": graph.edge_count()}
    for i, p in enumerate(players):
        want = [None] * n
        want[i] = 0
        las = outcome_search(g, graph, want)
        if las is not None:
            return SafetyVerdict(False, None, "payoff", {"agent": p, "outcome": graph.project(las)},
                                 None, stats)
    correct = None
    wrong_outcome = None
    if g.correctness is not None:
        las = outcome_search(g, graph, [None] * n, corr=0)
        correct = las is None
        if las is not None:
            wrong_outcome = graph.project(las)
    check = check_product(g, graph)
    stats.update(check.stats)
    if not check.all_sse:
        return SafetyVerdict(False, correct, "sse", check.witness, check, stats, wrong_outcome)
    return SafetyVerdict(True, correct, None, None, check, stats, wrong_outcome)


def exists_safe_protocol(c, max_nodes=None):
    """(exists, machine or None, ExistVerdict)."""
    game, target, corr = compile_challenge(c)
    if isinstance(game, OmegaRegularGame):
        verdict = exists_sse(synchronized_product(game), target, max_nodes)
    else:
        verdict = exists_sse(game, target, max_nodes)
    if not verdict.exists:
        return False, None, verdict
    return True, extract_protocol_machine(verdict), verdict
