"""Round-robin message-exchange arenas over monotone action sets."""

from collections import deque
from itertools import combinations

from ..games import Arena, DomainError


class Rule:
    def __init__(self, action, requires, sender):
        self.action = action
        self.requires = frozenset(requires)
        self.sender = sender


class MessageExchangeSpec:
    """Agents in round-robin order; an action is enabled for its sender once
    every required action has happened."""

    def __init__(self, agents, actions, rules):
        self.agents = list(agents)
        self.actions = list(actions)
        self.rules = list(rules)
        known = set(self.actions)
        for r in self.rules:
            if r.action not in known:
                raise DomainError("rule for unknown action %s" % r.action)
            if r.sender not in self.agents:
                raise DomainError("rule for unknown agent %s" % r.sender)
            bad = r.requires - known
            if bad:
                raise DomainError("rule for %s requires unknown actions %s" % (r.action, sorted(bad)))

    def enabled(self, agent, done):
        out = []
        for a in self.actions:
            if a in done:
                continue
            if any(r.action == a and r.sender == agent and r.requires <= done for r in self.rules):
                out.append(a)
        return out


def vertex_name(spec, done, agent):
    return "%s|%s" % (agent, ",".join(a for a in spec.actions if a in done))


def parse_vertex(name):
    agent, _, acts = name.partition("|")
    return frozenset(a for a in acts.split(",") if a), agent


def message_exchange_arena(spec, max_vertices=200000):
    """Reachable (action set, active agent) vertices; each move adds an enabled
    subset of actions at once (the empty subset is the pass move)."""
    first = spec.agents[0]
    nxt = {a: spec.agents[(i + 1) % len(spec.agents)] for i, a in enumerate(spec.agents)}
    start = (frozenset(), first)
    seen = {start}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        done, agent = queue.popleft()
        en = spec.enabled(agent, done)
        for k in range(len(en) + 1):
            for extra in combinations(en, k):
                y = (done | frozenset(extra), nxt[agent])
                edges.append(((done, agent), y))
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
                    if len(order) > max_vertices:
                        raise DomainError("arena exceeds %d vertices" % max_vertices)
    name = {x: vertex_name(spec, *x) for x in order}
    arena = Arena(spec.agents, [name[x] for x in order], {name[x]: x[1] for x in order},
                  [(name[a], name[b]) for a, b in edges], name[start])
    arena.state_of = {name[x]: x for x in order}
    arena.labels = {name[x]: x[0] for x in order if x[0]}
    return arena
