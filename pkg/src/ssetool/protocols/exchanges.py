"""Two-agent item exchanges, directly or through a trusted third party.

Alice owns item 1 and wants item 2 from Bob.  An agent is wronged when the
other ends up with its item while it never gets the other one.
"""

from . import templates
from .challenge import ProtocolChallenge
from .message_exchange import MessageExchangeSpec, Rule, message_exchange_arena

ALICE, BOB, TTP = "Alice", "Bob", "TTP"


def _bob_has_1(done):
    return "s1" in done or "f1" in done


def _alice_has_2(done):
    return "s2" in done or "f2" in done


def exchange_spec(with_ttp):
    # s1/s2: direct sends; d1/d2: deposits at the TTP; f1/f2: TTP forwards
    rules = [Rule("s1", [], ALICE), Rule("s2", [], BOB)]
    if not with_ttp:
        return MessageExchangeSpec([ALICE, BOB], ["s1", "s2"], rules)
    rules += [Rule("d1", [], ALICE), Rule("d2", [], BOB),
              Rule("f1", ["d1", "d2"], TTP), Rule("f2", ["d1", "d2"], TTP)]
    return MessageExchangeSpec([ALICE, BOB, TTP], ["s1", "s2", "d1", "d2", "f1", "f2"], rules)


def exchange_challenge(with_ttp):
    arena = message_exchange_arena(exchange_spec(with_ttp))
    at = arena.state_of

    def pred(f):
        return lambda v: f(at[v][0])

    wrong_a = templates.reach_avoid(arena, pred(_bob_has_1), pred(_alice_has_2))
    wrong_b = templates.reach_avoid(arena, pred(_alice_has_2), pred(_bob_has_1))
    wrong = {ALICE: wrong_a, BOB: wrong_b}
    if with_ttp:
        wrong[TTP] = templates.union(arena, [wrong_a, wrong_b])
    corr = templates.buchi(arena, pred(lambda d: _bob_has_1(d) and _alice_has_2(d)))
    name = "ttp-exchange" if with_ttp else "naive-exchange"
    return ProtocolChallenge(arena, wrong, correctness=corr, name=name)


def naive_exchange_challenge():
    return exchange_challenge(False)


def ttp_exchange_challenge():
    return exchange_challenge(True)
