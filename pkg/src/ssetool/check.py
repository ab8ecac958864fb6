"""SSE-checking through Streett emptiness on restricted product graphs."""

from itertools import combinations, product as cartesian

from .games import DomainError, Lasso, OmegaRegularGame, SyncProduct, synchronized_product
from .strategies import ALL, ProductMachine, build_product_graph
from .streett import accepting_sets, can_reach, reachable, streett_nonempty


def streett_pairs_for_payoff(colorings, target, k=None):
    """Pairs whose satisfying lassos realize `target`.

    `colorings` is a list (player order) of node -> color maps; `target`
    holds 1 (must win), 0 (must lose) or None (free) per player.
    """
    if k is None:
        k = max((max(c.values(), default=0) for c in colorings), default=0)
    pairs = []
    for col, want in zip(colorings, target):
        if want is None:
            continue
        by_color = {}
        for x, c in col.items():
            by_color.setdefault(c, set()).add(x)
        if want:
            for j in range(k // 2 + 1):
                r = by_color.get(2 * j + 1, set())
                if not r:
                    continue
                g = set()
                for c in range(0, 2 * j + 1, 2):
                    g |= by_color.get(c, set())
                pairs.append((r, g))
        else:
            for j in range((k + 1) // 2 + 1):
                r = by_color.get(2 * j, set())
                if not r:
                    continue
                g = set()
                for c in range(1, 2 * j, 2):
                    g |= by_color.get(c, set())
                pairs.append((r, g))
    return pairs


def upward_harm_set(x, coalition, players=None):
    """All y with y_i >= x_i on the coalition and y_j < x_j for some outsider j."""
    n = len(x)
    coalition = set(coalition)
    if players is not None:
        coalition = {players.index(p) for p in coalition}
    if not coalition or len(coalition) >= n:
        raise DomainError("coalition must be a nonempty proper subset of the players")
    out = []
    for y in cartesian((1, 0), repeat=n):
        if all(y[i] >= x[i] for i in coalition) and any(y[j] < x[j] for j in range(n) if j not in coalition):
            out.append(y)
    return out


class WitnessPair:
    def __init__(self, graph, alpha, beta, harmed, deviators, alpha_payoff, beta_payoff, split):
        self.graph = graph
        self.alpha = alpha
        self.beta = beta
        self.harmed = harmed
        self.deviators = tuple(deviators)
        self.alpha_payoff = alpha_payoff
        self.beta_payoff = beta_payoff
        self.split = split

    def deviating_edges(self, lasso):
        """(position, player) of every deviating edge along one unrolling of the lasso."""
        seq = list(lasso.vertices()) + [lasso.cycle[0]]
        out = []
        for i, (a, b) in enumerate(zip(seq, seq[1:])):
            lab = self.graph.label(a, b)
            if lab is not None:
                out.append((i, lab))
        return out

    def projected(self):
        return self.graph.project(self.alpha), self.graph.project(self.beta)

    def to_dict(self, fmt=str):
        pa, pb = self.projected()
        return {
            "harmed": self.harmed,
            "deviators": list(self.deviators),
            "alpha": {"prefix": [fmt(v) for v in pa.prefix], "cycle": [fmt(v) for v in pa.cycle]},
            "beta": {"prefix": [fmt(v) for v in pb.prefix], "cycle": [fmt(v) for v in pb.cycle]},
            "beta_deviations": [[i, p] for i, p in self.deviating_edges(self.beta)],
            "alpha_payoff": "".join(map(str, self.alpha_payoff)),
            "beta_payoff": "".join(map(str, self.beta_payoff)),
            "divergence": self.split,
        }


class CheckVerdict:
    def __init__(self, witness, stats):
        self.witness = witness
        self.stats = stats

    @property
    def outcome(self):
        return "all-SSE" if self.witness is None else "not-SSE"

    @property
    def all_sse(self):
        return self.witness is None

    def __repr__(self):
        return "CheckVerdict(%s)" % self.outcome


def node_colorings(graph, game):
    vertex_of = graph.nodes
    return [{i: game.objectives[p][x[0]] for i, x in enumerate(vertex_of)} for p in game.arena.players]


def lasso_payoff(colorings, lasso):
    return tuple(int(min(col[i] for i in lasso.cycle) % 2 == 0) for col in colorings)


def validate_witness(w, colorings, players):
    """Problems with a witness pair (empty when it is a genuine witness)."""
    g = w.graph
    probs = []
    for name, las in (("alpha", w.alpha), ("beta", w.beta)):
        if not las.is_valid_in(g.has_edge, start=g.initial):
            probs.append("%s is not a lasso from the initial node" % name)
    if probs:
        return probs
    if w.deviating_edges(w.alpha):
        probs.append("alpha uses a deviating edge")
    la, lb = w.alpha, w.beta
    horizon = max(len(la.prefix), len(lb.prefix)) + len(la.cycle) * len(lb.cycle) + 1
    ua, ub = la.unroll(horizon + 1), lb.unroll(horizon + 1)
    split = next((i for i in range(horizon + 1) if ua[i] != ub[i]), None)
    if split is None:
        probs.append("alpha and beta denote the same play")
    elif split == 0:
        probs.append("alpha and beta differ at the initial node")
    else:
        lab = g.label(ub[split - 1], ub[split])
        if lab is None:
            probs.append("first divergence is not a deviating edge")
    devs = set(p for _, p in w.deviating_edges(w.beta))
    if not devs <= set(w.deviators):
        probs.append("beta deviates outside the coalition")
    if w.harmed in w.deviators:
        probs.append("harmed player is a deviator")
    pa, pb = lasso_payoff(colorings, la), lasso_payoff(colorings, lb)
    h = players.index(w.harmed)
    if not (pa[h] == 1 and pb[h] == 0):
        probs.append("harmed player is not harmed")
    for p in w.deviators:
        i = players.index(p)
        if pb[i] < pa[i]:
            probs.append("deviator %s loses payoff" % p)
    return probs


def _coalitions(players):
    n = len(players)
    for size in range(1, n):
        for c in combinations(players, size):
            yield c


def check_product(game, graph):
    """check_sse on an already-built product graph."""
    players = list(game.arena.players)
    n = len(players)
    cols = node_colorings(graph, game)
    k = max((max(c.values(), default=0) for c in cols), default=0)
    N = len(graph)
    nd_succ = [[j for j, lab in row if lab is None] for row in graph.succ]
    base = reachable(nd_succ, [0])
    stats = {"product_nodes": N, "product_edges": graph.edge_count(), "emptiness_checks": 0,
             "achievable_payoffs": []}

    for x in cartesian((1, 0), repeat=n):
        pairs_x = streett_pairs_for_payoff(cols, x, k)
        stats["emptiness_checks"] += 1
        sets = accepting_sets(nd_succ, base, pairs_x)
        if not sets:
            continue
        stats["achievable_payoffs"].append("".join(map(str, x)))
        good = can_reach(nd_succ, base, [v for comp in sets for v in comp])
        for coal in _coalitions(players):
            cset = set(coal)
            harmed = [j for j in range(n) if x[j] == 1 and players[j] not in cset]
            if not harmed:
                continue
            succ_t = [None] * (2 * N)
            for v in base:
                row = [j for j, lab in graph.succ[v] if lab is None]
                if v in good:
                    row += [N + j for j, lab in graph.succ[v] if lab is not None and lab in cset]
                succ_t[v] = row
            flagged = reachable([(r if r is not None else []) for r in succ_t], [0])
            todo = [v - N for v in flagged if v >= N]
            seen1 = set(todo)
            while todo:
                v = todo.pop()
                row = []
                for j, lab in graph.succ[v]:
                    if lab is None or lab in cset:
                        row.append(N + j)
                        if j not in seen1:
                            seen1.add(j)
                            todo.append(j)
                succ_t[N + v] = row
            for i in range(2 * N):
                if succ_t[i] is None:
                    succ_t[i] = []
            flag0 = set(v for v in base)
            for j in harmed:
                target = [None] * n
                target[j] = 0
                for i in range(n):
                    if players[i] in cset and x[i] == 1:
                        target[i] = 1
                cols1 = [{N + v: col[v] for v in seen1} for col in cols]
                pairs = streett_pairs_for_payoff(cols1, target, k)
                pairs.append((flag0, set()))
                stats["emptiness_checks"] += 1
                beta_t = streett_nonempty(succ_t, 0, pairs)
                if beta_t is None:
                    continue
                seq = beta_t.vertices()
                cut = next(i for i, v in enumerate(seq) if v >= N)
                head = list(seq[:cut])
                p = head[-1]
                stats["emptiness_checks"] += 1
                tail = streett_nonempty(nd_succ, p, pairs_x)
                alpha = Lasso(head[:-1] + list(tail.prefix), tail.cycle)
                beta = Lasso([v if v < N else v - N for v in beta_t.prefix],
                             [v - N for v in beta_t.cycle])
                w = WitnessPair(graph, alpha, beta, players[j], coal,
                                lasso_payoff(cols, alpha), lasso_payoff(cols, beta), cut)
                return CheckVerdict(w, stats)
    return CheckVerdict(None, stats)


def check_sse(game, m):
    """Decide whether every profile compatible with `m` is an SSE of `game`."""
    if getattr(m, "scope", ALL) != ALL:
        raise DomainError("check_sse needs an all-players machine")
    project = (lambda x: x[0]) if isinstance(game, SyncProduct) else None
    graph = build_product_graph(game.arena, m, project)
    return check_product(game, graph)


def check_sse_compositional(game, machines):
    return check_sse(game, ProductMachine(game.arena, machines))


class LiftedMachine:
    """Machine over arena vertices made to read synchronized-product vertices."""

    scope = ALL

    def __init__(self, product, m):
        self.product = product
        self.base = m
        self.initial = m.initial

    def tuples(self, state, x):
        out = []
        for t, w in self.base.tuples(state, x[0]):
            out.append((t, None if w is None else self.product.lift(w, x)))
        return out


def check_sse_omega(game, m):
    if not isinstance(game, OmegaRegularGame):
        raise DomainError("expected an omega-regular game")
    if isinstance(m, (list, tuple)):
        m = ProductMachine(game.arena, list(m))
    gp = synchronized_product(game)
    return check_sse(gp, LiftedMachine(gp, m))


def product_for(game, m):
    """(game the product lives on, product graph) for a parity or omega-regular
    game and an all-players machine or a list of per-player machines."""
    if isinstance(m, (list, tuple)):
        m = ProductMachine(game.arena, list(m))
    if isinstance(game, OmegaRegularGame):
        gp = synchronized_product(game)
        return gp, build_product_graph(gp.arena, LiftedMachine(gp, m), lambda x: x[0])
    if getattr(m, "scope", ALL) != ALL:
        raise DomainError("expected an all-players machine")
    project = (lambda x: x[0]) if isinstance(game, SyncProduct) else None
    return game, build_product_graph(game.arena, m, project)


def outcome_search(game, graph, target, corr=None):
    """Non-deviating lasso realizing the partial `target` (and correctness bit), or None."""
    cols = node_colorings(graph, game)
    if corr is not None:
        cols.append({i: game.correctness[x[0]] for i, x in enumerate(graph.nodes)})
        target = list(target) + [corr]
    nd_succ = [[j for j, lab in row if lab is None] for row in graph.succ]
    return streett_nonempty(nd_succ, 0, streett_pairs_for_payoff(cols, target))
