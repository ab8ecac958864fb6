"""Three agents exchanging items in a ring without a trusted party.

Each agent owns one item for each other agent.  Turns go Alice, Bob,
Charlie; on its turn an agent sends one of its own items to the rightful
recipient or passes.  An agent is satisfied each time it has received both
items meant for it; the exchange then starts over with everyone holding
their own items again.
"""

from ..games import Arena, ParityAutomaton
from ..strategies import ALL, MealyMachine
from .challenge import ProtocolChallenge

AGENTS = ("Alice", "Bob", "Charlie")
SHORT = {"Alice": "A", "Bob": "B", "Charlie": "C"}
SINK = "sink"

# one full round: (sender, recipient) per turn
ROUND = (("Alice", "Bob"), ("Bob", "Charlie"), ("Charlie", "Alice"),
         ("Alice", "Charlie"), ("Bob", "Alice"), ("Charlie", "Bob"))


def item(sender, recipient):
    return SHORT[sender] + SHORT[recipient]


def turn(agent):
    return "turn:" + agent


def send(sender, recipient):
    return "%s>%s" % (sender, item(sender, recipient))


def _next(agent):
    return AGENTS[(AGENTS.index(agent) + 1) % 3]


def tripartite_arena():
    vertices, owner, edges = [], {}, []
    for a in AGENTS:
        vertices.append(turn(a))
        owner[turn(a)] = a
    for a in AGENTS:
        for b in AGENTS:
            if a != b:
                x = send(a, b)
                vertices.append(x)
                owner[x] = a
                edges.append((turn(a), x))
                edges.append((x, turn(_next(a))))
        edges.append((turn(a), turn(_next(a))))
    return Arena(AGENTS, vertices, owner, edges, turn(AGENTS[0]))


def satisfaction_automaton(arena, agent):
    """Accepts the plays where `agent` is satisfied infinitely often.

    States record which own items are still held and which incoming items
    have arrived; sending an item not held leads to the rejecting sink.
    """
    others = [b for b in AGENTS if b != agent]
    states = [SINK]
    for h0 in (0, 1):
        for h1 in (0, 1):
            for g0 in (0, 1):
                for g1 in (0, 1):
                    states.append((h0, h1, g0, g1))
    init = (1, 1, 0, 0)

    def step(s, x):
        if s == SINK:
            return SINK
        if s[2] and s[3]:
            s = init
        held = list(s[:2])
        got = list(s[2:])
        for i, b in enumerate(others):
            if x == send(agent, b):
                if not held[i]:
                    return SINK
                held[i] = 0
            if x == send(b, agent):
                got[i] = 1
        return tuple(held + got)

    delta = {(s, x): step(s, x) for s in states for x in arena.vertices}
    colors = {s: 0 if s != SINK and s[2] and s[3] else 1 for s in states}
    return ParityAutomaton(arena.vertices, states, init, delta, colors)


def wronged_automaton(arena, agent):
    a = satisfaction_automaton(arena, agent)
    return ParityAutomaton(a.alphabet, a.states, a.initial, a.delta, a.coloring.complement())


def round_machine(arena, punish=True):
    """Follow the round schedule; any agent straying from it is flagged and,
    with `punish`, no longer receives items from the others.

    States are (turn index, flagged agents, expected next vertex)."""
    init = ("start",)
    states = [init]
    seen = {init}
    table = {}

    def output(phase, flagged, u):
        if u.startswith("turn:"):
            sender, recipient = ROUND[phase]
            if sender != arena.owner[u]:
                return turn(_next(arena.owner[u]))
            if punish and recipient in flagged:
                return turn(_next(sender))
            return send(sender, recipient)
        return arena.succ[u][0]

    def read(s, u):
        if s == init:
            phase, flagged = 0, frozenset()
        else:
            phase, flagged, expect = s
            if u != expect:
                flagged = flagged | {ROUND[phase][0]}
            if u.startswith("turn:"):
                phase = (phase + 1) % len(ROUND)
        return (phase, flagged, output(phase, flagged, u))

    todo = [init]
    while todo:
        s = todo.pop()
        for u in arena.vertices:
            t = read(s, u)
            table[(s, u)] = [(t, t[2])]
            if t not in seen:
                seen.add(t)
                states.append(t)
                todo.append(t)
    return MealyMachine(ALL, states, init, table)


def tripartite_challenge(punish=True):
    arena = tripartite_arena()
    wrong = {a: wronged_automaton(arena, a) for a in AGENTS}
    return ProtocolChallenge(arena, wrong, name="tripartite"), round_machine(arena, punish)
