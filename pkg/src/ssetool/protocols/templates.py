"""Objective templates over vertex predicates, realized as colorings.

Predicates are functions vertex -> bool.  The reach/avoid and response
templates need predicates that never switch from true to false along an
edge (as with the action sets of message-exchange arenas); this is checked.
"""

from ..games import Coloring, DomainError
from ..streett import sccs


def require_monotone(arena, pred, name="predicate"):
    for u, v in arena.edges:
        if pred(u) and not pred(v):
            raise DomainError("%s is not monotone along %s->%s" % (name, u, v))


def buchi(arena, pred):
    """Win iff the predicate holds infinitely often."""
    return Coloring({v: 0 if pred(v) else 1 for v in arena.vertices})


def cobuchi(arena, pred):
    """Win iff the predicate eventually always holds."""
    return Coloring({v: 2 if pred(v) else 1 for v in arena.vertices})


def reach_avoid(arena, p, q):
    """F p and G not q, for monotone p and q."""
    require_monotone(arena, p, "reach predicate")
    require_monotone(arena, q, "avoid predicate")
    return Coloring({v: 1 if q(v) else (2 if p(v) else 3) for v in arena.vertices})


def response(arena, pairs):
    """Conjunction of G(p => F q) over the pairs, for monotone predicates."""
    for p, q in pairs:
        require_monotone(arena, p, "trigger predicate")
        require_monotone(arena, q, "response predicate")
    return Coloring({v: 1 if any(p(v) and not q(v) for p, q in pairs) else 2
                     for v in arena.vertices})


def never(arena):
    """Objective with no winning play (used for an empty wronging condition)."""
    return Coloring({v: 1 for v in arena.vertices})


def always(arena):
    return Coloring({v: 0 for v in arena.vertices})


def combine(arena, colorings, fn):
    """Boolean combination of parity colorings, evaluated per strongly connected
    component.  Exact when every coloring is constant on each cyclic component,
    which holds for the templates above on monotone arenas."""
    verts = list(arena.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    succ = [[idx[w] for w in arena.succ[v]] for v in verts]
    out = {v: 1 for v in verts}
    for comp in sccs(range(len(verts)), succ):
        if len(comp) == 1 and comp[0] not in succ[comp[0]]:
            continue
        wins = []
        for col in colorings:
            seen = {col[verts[i]] for i in comp}
            if len(seen) != 1:
                raise DomainError("cannot combine colorings that vary on a cycle; use automata")
            wins.append(seen.pop() % 2 == 0)
        if fn(wins):
            for i in comp:
                out[verts[i]] = 0
    return Coloring(out)


def union(arena, colorings):
    return combine(arena, colorings, any)


def intersection(arena, colorings):
    return combine(arena, colorings, all)


def negation(col):
    return col.complement()
