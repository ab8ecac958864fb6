"""Protocol challenges, their verification and synthesis, and bundled case studies."""

from .challenge import (ObjectiveGraph, ProtocolChallenge, SafetyVerdict, compile_challenge,
                        exists_safe_protocol, protocol_graph, verify_protocol)
from .exchanges import naive_exchange_challenge, ttp_exchange_challenge
from .message_exchange import MessageExchangeSpec, Rule, message_exchange_arena
from .tripartite import tripartite_challenge
from .zhou_gollmann import zg_machines, zhou_gollmann_challenge

__all__ = [
    "MessageExchangeSpec", "ObjectiveGraph", "ProtocolChallenge", "Rule", "SafetyVerdict",
    "compile_challenge", "exists_safe_protocol", "message_exchange_arena",
    "naive_exchange_challenge", "protocol_graph", "tripartite_challenge",
    "ttp_exchange_challenge", "verify_protocol", "zg_machines", "zhou_gollmann_challenge",
]
