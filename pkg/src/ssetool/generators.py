"""Model files for the `gen` command: gadgets, case studies and random instances."""

from . import reductions, textio
from .games import DomainError, bits
from .protocols.exchanges import exchange_spec
from .protocols.tripartite import AGENTS as TRI_AGENTS
from .protocols.tripartite import round_machine, tripartite_arena, wronged_automaton
from .protocols.zhou_gollmann import zg_machine, zg_spec
from .protocols.message_exchange import message_exchange_arena

ZG_CHALLENGE = """[challenge]
arena = zg.exchange
agent Alice
agent Bob
agent TTP
agent I infrastructure
pred NRO = EOO_r & (EOOk_r | ConB)
pred NRR = EOR_r & (EORk_r | ConA)
wrong Alice = reach_avoid(NRO, NRR)
wrong Bob = reach_avoid(NRR, NRO)
wrong TTP = union(reach_avoid(NRO, NRR), reach_avoid(NRR, NRO))
compliance = response(EOO_s -> EOO_r, EOR_s -> EOR_r, EOOk_s -> EOOk_r, EORk_s -> EORk_r)
correctness = buchi(NRO & NRR)
"""

EXCHANGE_CHALLENGE = """[challenge]
arena = {arena}
{agents}pred BOB_HAS_1 = {has1}
pred ALICE_HAS_2 = {has2}
wrong Alice = reach_avoid(BOB_HAS_1, ALICE_HAS_2)
wrong Bob = reach_avoid(ALICE_HAS_2, BOB_HAS_1)
{ttp}correctness = buchi(BOB_HAS_1 & ALICE_HAS_2)
"""


def _cnf_text(f):
    return " & ".join("(" + " | ".join(reductions.lit_name(l) for l in c) + ")" for c in f.clauses)


def _omega_files(game, stem):
    refs, files = {}, {}
    for p in game.arena.players:
        refs[p] = "%s_%s.aut" % (stem, p.lower())
        files[refs[p]] = textio.format_automaton(game.objectives[p])
    files["%s.game" % stem] = textio.format_game(game, refs)
    return files


def generate(kind, rng, args):
    """(file name -> text, info) for one `gen` kind."""
    if kind == "sat":
        f = reductions.random_cnf(rng, args.variables, args.clauses, min(3, args.variables))
        game, m = reductions.sat_to_checking(f)
        head = "# CNF %s (satisfiable: %s)\n" % (_cnf_text(f), reductions.cnf_satisfiable(f))
        return ({"sat.game": head + textio.format_game(game), "sat.machine": textio.format_machine(m)},
                {"formula": _cnf_text(f), "satisfiable": reductions.cnf_satisfiable(f),
                 "expected": "not-SSE" if reductions.cnf_satisfiable(f) else "all-SSE"})
    if kind == "qsat":
        f = reductions.QbfFormula(args.variables,
                                  reductions.random_cnf(rng, args.variables, args.clauses,
                                                        min(3, args.variables)).clauses)
        game, target = reductions.qsat_to_existence(f)
        holds = reductions.qbf_holds(f)
        head = "# QBF exists x1 forall x2 ...: %s (true: %s); target payoff %s\n" % (
            _cnf_text(f.matrix), holds, bits(target))
        return ({"qsat.game": head + textio.format_game(game)},
                {"formula": _cnf_text(f.matrix), "holds": holds, "payoff": bits(target),
                 "expected": "not-exists" if holds else "exists"})
    if kind == "dfai":
        dfas = [reductions.random_dfa(rng, args.states) for _ in range(args.automata)]
        game, machines = reductions.dfa_intersection_to_checking(dfas)
        files = _omega_files(game, "dfai")
        for m in machines:
            files["dfai_%s.machine" % str(m.scope).lower()] = textio.format_machine(m)
        empty = reductions.intersection_witness(dfas) is None
        return files, {"intersection_empty": empty, "expected": "all-SSE" if empty else "not-SSE"}
    if kind == "zg":
        if args.theta < 1:
            raise DomainError("--theta must be at least 1")
        spec = zg_spec()
        arena = message_exchange_arena(spec)
        files = {
            "zg.exchange": textio.format_exchange(spec),
            "zg.challenge": ZG_CHALLENGE,
            "zg_theta%d.machine" % args.theta: textio.format_machine(zg_machine(arena, args.theta)),
            "zg_theta%d_withhold.machine" % args.theta:
                textio.format_machine(zg_machine(arena, args.theta, withhold=True)),
        }
        return files, {"arena_vertices": len(arena.vertices)}
    if kind == "tripartite":
        arena = tripartite_arena()
        files = {"tripartite.game": textio.format_arena(arena)}
        lines = ["[challenge]", "arena = tripartite.game"] + ["agent %s" % a for a in TRI_AGENTS]
        for a in TRI_AGENTS:
            name = "tripartite_wrong_%s.aut" % a.lower()
            files[name] = textio.format_automaton(wronged_automaton(arena, a))
            lines.append("wrong %s = automaton %s" % (a, name))
        files["tripartite.challenge"] = "\n".join(lines) + "\n"
        files["tripartite.machine"] = textio.format_machine(round_machine(arena, True))
        files["tripartite_nopunish.machine"] = textio.format_machine(round_machine(arena, False))
        return files, {"arena_vertices": len(arena.vertices)}
    if kind in ("naive", "ttp"):
        with_ttp = kind == "ttp"
        spec = exchange_spec(with_ttp)
        agents = "".join("agent %s\n" % a for a in spec.agents)
        ttp = "wrong TTP = union(reach_avoid(BOB_HAS_1, ALICE_HAS_2), reach_avoid(ALICE_HAS_2, BOB_HAS_1))\n"
        text = EXCHANGE_CHALLENGE.format(arena="%s.exchange" % kind, agents=agents, ttp=ttp if with_ttp else "",
                                         has1="s1 | f1" if with_ttp else "s1",
                                         has2="s2 | f2" if with_ttp else "s2")
        return ({"%s.exchange" % kind: textio.format_exchange(spec), "%s.challenge" % kind: text},
                {"agents": " ".join(spec.agents)})
    if kind == "random":
        game, m = reductions.random_instance(rng)
        return {"random.game": textio.format_game(game), "random.machine": textio.format_machine(m)}, {}
    raise DomainError("unknown generator %s" % kind)
