"""Optimistic non-repudiation exchange between Alice and Bob with a TTP and a
resilient-channel infrastructure, plus the deadline-θ protocol machine."""

from ..games import DomainError
from ..strategies import ALL, MealyMachine
from . import templates
from .challenge import ProtocolChallenge
from .message_exchange import MessageExchangeSpec, Rule, message_exchange_arena, vertex_name

ALICE, BOB, TTP, INFRA = "Alice", "Bob", "TTP", "I"
AGENTS = (ALICE, BOB, TTP, INFRA)

# evidence of origin/receipt, their key-completed variants, key submission, confirmations
MESSAGES = ("EOO", "EOR", "EOOk", "EORk")
ACTIONS = tuple(m + x for m in MESSAGES for x in ("_s", "_r")) + ("Subk", "ConA", "ConB")


def zg_spec():
    rules = [
        Rule("EOO_s", [], ALICE),
        Rule("EOOk_s", [], ALICE),
        Rule("Subk", [], ALICE),
        Rule("EOR_s", ["EOO_r"], BOB),
        Rule("EORk_s", ["EOOk_r"], BOB),
        Rule("ConA", ["Subk"], TTP),
        Rule("ConB", ["Subk"], TTP),
    ]
    rules += [Rule(m + "_r", [m + "_s"], INFRA) for m in MESSAGES]
    return MessageExchangeSpec(AGENTS, ACTIONS, rules)


def nro(done):
    """Bob holds a complete non-repudiation of origin."""
    return "EOO_r" in done and ("EOOk_r" in done or "ConB" in done)


def nrr(done):
    """Alice holds a complete non-repudiation of receipt."""
    return "EOR_r" in done and ("EORk_r" in done or "ConA" in done)


def pending(done):
    return any(m + "_s" in done and m + "_r" not in done for m in MESSAGES)


def zg_arena():
    return message_exchange_arena(zg_spec())


def zhou_gollmann_challenge(theta=3, withhold=False):
    """(challenge, M_θ).  With `withhold` the infrastructure never delivers EOOk."""
    if theta < 1:
        raise DomainError("theta must be at least 1")
    arena = zg_arena()
    at = arena.state_of

    def pred(f):
        return lambda v: f(at[v][0])

    wrong_a = templates.reach_avoid(arena, pred(nro), pred(nrr))
    wrong_b = templates.reach_avoid(arena, pred(nrr), pred(nro))
    wrong_ttp = templates.union(arena, [wrong_a, wrong_b])
    com = templates.response(arena, [(pred(lambda d, m=m: m + "_s" in d), pred(lambda d, m=m: m + "_r" in d))
                                     for m in MESSAGES])
    corr = templates.buchi(arena, pred(lambda d: nro(d) and nrr(d)))
    c = ProtocolChallenge(arena, {ALICE: wrong_a, BOB: wrong_b, TTP: wrong_ttp},
                          correctness=corr, compliance=com, infrastructure=INFRA,
                          name="zhou-gollmann")
    return c, zg_machine(arena, theta, withhold)


def _move(theta, s, done, agent, withhold):
    """(next state, actions added) for the deadline-θ protocol."""
    if agent == INFRA:
        add = {m + "_r" for m in MESSAGES if m + "_s" in done and m + "_r" not in done}
        if withhold:
            add.discard("EOOk_r")
        return min(s + 1, theta), add
    if agent == ALICE:
        if s < theta - 1:
            return s, {"EOOk_s"} if "EOR_r" in done else {"EOO_s"}
        if s == theta - 1:
            if "EOR_r" in done and ("EOOk_s" not in done or "EORk_r" not in done):
                return s, {"Subk"}
        return s, set()
    if agent == BOB:
        add = set()
        if "EOO_r" in done:
            add.add("EOR_s")
        if "EOOk_r" in done:
            add.add("EORk_s")
        return s, add
    if s < theta and "Subk" in done:
        return s, {"ConA", "ConB"}
    return s, set()


def zg_machine(arena, theta, withhold=False, scope=ALL):
    """M_θ: states 0..θ count infrastructure turns.  With a player scope, the
    machine only moves at that player's vertices and reads elsewhere."""
    spec = zg_spec()
    nxt = {a: AGENTS[(i + 1) % len(AGENTS)] for i, a in enumerate(AGENTS)}
    table = {}
    for s in range(theta + 1):
        for v in arena.vertices:
            done, agent = arena.state_of[v]
            t, add = _move(theta, s, done, agent, withhold)
            w = vertex_name(spec, done | add, nxt[agent])
            if scope == ALL or scope == agent:
                table[(s, v)] = [(t, w)]
            else:
                table[(s, v)] = [(t, None)]
    return MealyMachine(scope, list(range(theta + 1)), 0, table)


def zg_machines(arena, theta, withhold=False):
    """One machine per agent; their product behaves as M_θ."""
    return [zg_machine(arena, theta, withhold, scope=a) for a in AGENTS]
