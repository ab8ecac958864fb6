"""Streett conditions over integer graphs and their emptiness check."""

from collections import deque

from .games import Lasso


def sccs(nodes, succ, allowed=None):
    """Strongly connected components of the subgraph induced by `allowed`.

    Iterative Tarjan; `succ[i]` is a list of successor ids.  Components come
    out in reverse topological order.
    """
    if allowed is None:
        allowed = set(nodes)
    index = {}
    low = {}
    onstack = set()
    stack = []
    out = []
    counter = 0
    for root in nodes:
        if root not in allowed or root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in allowed:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(succ[w])))
                    pushed = True
                    break
                if w in onstack and index[w] < low[v]:
                    low[v] = index[w]
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def reachable(succ, starts, allowed=None):
    seen = set()
    order = []
    queue = deque()
    for s in starts:
        if (allowed is None or s in allowed) and s not in seen:
            seen.add(s)
            order.append(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def _nontrivial(comp, succ):
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in succ[v]


def accepting_sets(succ, nodes, pairs):
    """Maximal-refinement SCC sets inside `nodes` in which every lasso hitting
    some R_j can also hit G_j.  Any cycle inside such a set that visits one
    G-vertex per pair whose R meets the set satisfies the condition.
    """
    out = []
    pending = [list(nodes)]
    while pending:
        part = pending.pop()
        allowed = set(part)
        for comp in sccs(part, succ, allowed):
            if not _nontrivial(comp, succ):
                continue
            kset = set(comp)
            bad = [j for j, (r, g) in enumerate(pairs) if not r.isdisjoint(kset) and g.isdisjoint(kset)]
            if not bad:
                out.append(sorted(comp))
                continue
            drop = set()
            for j in bad:
                drop |= pairs[j][0]
            rest = [v for v in sorted(comp) if v not in drop]
            if rest:
                pending.append(rest)
    out.sort()
    return out


def _bfs_path(succ, src, targets, allowed, nonempty=False):
    """Shortest path src ->...-> t for some t in targets, staying in `allowed`."""
    parent = {}
    queue = deque()
    if not nonempty and src in targets:
        return [src]
    for w in succ[src]:
        if w in allowed and w not in parent:
            parent[w] = src
            queue.append(w)
    while queue:
        v = queue.popleft()
        if v in targets:
            path = [v]
            while True:
                p = parent[path[-1]]
                path.append(p)
                if p == src and len(path) > 1:
                    break
            path.reverse()
            return path
        for w in succ[v]:
            if w in allowed and w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def cycle_in_set(succ, comp, pairs, entry):
    """Cycle from `entry` inside accepting set `comp` meeting the required grants."""
    kset = set(comp)
    goals = []
    for r, g in pairs:
        if not r.isdisjoint(kset):
            for v in comp:
                if v in g:
                    goals.append(v)
                    break
    cycle = []
    cur = entry
    for goal in goals:
        if goal == cur:
            continue
        path = _bfs_path(succ, cur, {goal}, kset)
        cycle.extend(path[:-1])
        cur = goal
    path = _bfs_path(succ, cur, {entry}, kset, nonempty=True)
    cycle.extend(path[:-1])
    return cycle


class StreettResult:
    def __init__(self, reach, sets):
        self.reach = reach
        self.sets = sets

    def __bool__(self):
        return bool(self.sets)


def streett_nonempty(succ, start, pairs, allowed=None, reach=None):
    """Lasso from `start` satisfying every pair (Inf R => Inf G), or None.

    `succ[i]` is a list of successor ids.  The prefix is a shortest path to
    the nearest accepting set.
    """
    if reach is None:
        reach = reachable(succ, [start], allowed)
    sets = accepting_sets(succ, reach, pairs)
    if not sets:
        return None
    where = {}
    for k, comp in enumerate(sets):
        for v in comp:
            where[v] = k
    rset = set(reach)
    path = _bfs_path(succ, start, set(where), rset)
    entry = path[-1]
    cycle = cycle_in_set(succ, sets[where[entry]], pairs, entry)
    return Lasso(path[:-1], cycle)


def can_reach(succ, nodes, targets):
    """Nodes of `nodes` from which some target is reachable (within `nodes`)."""
    nset = set(nodes)
    pred = {v: [] for v in nodes}
    for v in nodes:
        for w in succ[v]:
            if w in nset:
                pred[w].append(v)
    seen = set(t for t in targets if t in nset)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def satisfies(lasso, pairs):
    inf = set(lasso.cycle)
    return all(r.isdisjoint(inf) or not g.isdisjoint(inf) for r, g in pairs)
