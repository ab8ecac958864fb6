"""Command-line front end.

Exit codes: 0 for a positive verdict (all-SSE, EXISTS, SAFE), 1 for a
negative one, 2 for input errors.
"""

import argparse
import hashlib
import json
import os
import random
import sys
import time

from . import __version__
from .check import check_product, product_for
from .dot import arena_dot, product_dot
from .exist import exists_sse, extract_protocol_machine
from .games import (DomainError, OmegaRegularGame, ParityGame, bits, parse_bits, synchronized_product,
                    as_omega_regular)
from .oracle import oracle_solve_parity, oracle_witness_search
from .strategies import ALL, is_deterministic, validate_machine
from . import textio


class InputError(Exception):
    pass


class Report:
    """RunReport: one JSON document per run with a fixed field order."""

    def __init__(self, argv):
        self.command = list(argv)
        self.inputs = {}
        self.verdict = None
        self.exit_code = None
        self.payload = {}
        self.stats = {}
        self.lines = []

    def read(self, path):
        try:
            with open(path, "rb") as f:
                data = f.read()
        except OSError as e:
            raise InputError("%s: cannot read file: %s" % (path, e.strerror))
        self.inputs[path] = hashlib.sha256(data).hexdigest()

    def say(self, line=""):
        self.lines.append(line)

    def to_json(self, wall=None):
        doc = {
            "command": self.command,
            "inputs": [{"path": p, "sha256": h} for p, h in self.inputs.items()],
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "payload": self.payload,
            "stats": self.stats,
        }
        if wall is not None:
            doc["wall_time"] = wall
        return json.dumps(doc, indent=2, ensure_ascii=False, default=_jsonable)


def _jsonable(x):
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x, key=str) if isinstance(x, (set, frozenset)) else list(x)
    return str(x)


# ---------------------------------------------------------------- rendering

def render_lasso(lasso, marks=None):
    """Vertices of a lasso, `!player` before the target of each deviating edge,
    cycle in parentheses."""
    marks = dict(marks or {})
    seq = list(lasso.vertices())
    out = []
    for i, v in enumerate(seq):
        if i in marks:
            out.append("!%s" % marks[i])
        if i == len(lasso.prefix):
            out.append("(")
        out.append(str(v))
    if len(seq) in marks:
        out.append("!%s" % marks[len(seq)])
    out.append(")^w")
    return " ".join(out)


def witness_lines(w):
    pa, pb = w.projected()
    marks = {i + 1: p for i, p in w.deviating_edges(w.beta)}
    return [
        "harmed: %s" % w.harmed,
        "coalition: %s" % " ".join(map(str, w.deviators)),
        "payoff: %s -> %s" % (bits(w.alpha_payoff), bits(w.beta_payoff)),
        "alpha: %s" % render_lasso(pa),
        "beta:  %s" % render_lasso(pb, marks),
    ]


# ---------------------------------------------------------------- loading

def _load_game(rep, path):
    rep.read(path)
    return textio.load_game(path)


def _load_machine(rep, path, arena):
    rep.read(path)
    m = textio.load_machine(path)
    probs = validate_machine(arena, m)
    if probs:
        raise InputError("%s: %s" % (path, probs[0]))
    return m


def _write(path, text):
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _limit(args, n, what):
    if args.max_vertices is not None and n > args.max_vertices:
        raise DomainError("%s has %d vertices, above --max-vertices %d" % (what, n, args.max_vertices))


# ---------------------------------------------------------------- commands

def _run_check(args, rep, game, machine):
    g, graph = product_for(game, machine)
    _limit(args, len(graph), "product graph")
    v = check_product(g, graph)
    rep.stats = dict(v.stats)
    rep.verdict = v.outcome
    if args.dot:
        _write(args.dot, product_dot(graph, v.witness))
    if v.all_sse:
        rep.say("ALL-SSE")
        rep.exit_code = 0
    else:
        rep.say("NOT-SSE")
        for line in witness_lines(v.witness):
            rep.say(line)
        rep.payload = {"witness": v.witness.to_dict()}
        rep.exit_code = 1


def cmd_check(args, rep):
    game = _load_game(rep, args.game)
    m = _load_machine(rep, args.machine, game.arena)
    if m.scope != ALL:
        raise InputError("%s: check needs a machine with scope=all (use check-comp)" % args.machine)
    _run_check(args, rep, game, m)


def cmd_check_comp(args, rep):
    game = _load_game(rep, args.game)
    ms = [_load_machine(rep, p, game.arena) for p in args.machines]
    _run_check(args, rep, game, ms)


def _corr_game(rep, game, path):
    rep.read(path)
    a = textio.parse_automaton(textio._read(path), path, alphabet=game.arena.vertices)
    if isinstance(game, ParityGame):
        game = as_omega_regular(game)
    return OmegaRegularGame(game.arena, game.objectives, a)


def _emit(args, rep, verdict):
    m = extract_protocol_machine(verdict)
    text = textio.format_machine(m)
    rep.stats["machine_states"] = len(m.states)
    if args.emit_machine:
        _write(args.emit_machine, text)
        rep.say("machine written to %s (%d states)" % (args.emit_machine, len(m.states)))


def cmd_exists(args, rep):
    game = _load_game(rep, args.game)
    target = parse_bits(args.payoff, len(game.arena.players))
    if args.corr:
        game = _corr_game(rep, game, args.corr)
    if isinstance(game, OmegaRegularGame):
        game = synchronized_product(game)
    verdict = exists_sse(game, target, args.max_vertices)
    rep.stats = dict(verdict.stats)
    rep.payload = {"payoff": bits(target)}
    if verdict.exists:
        rep.verdict, rep.exit_code = "exists", 0
        rep.say("EXISTS")
        _emit(args, rep, verdict)
    else:
        rep.verdict, rep.exit_code = "not-exists", 1
        rep.say("NOT-EXISTS")


def _load_challenge(rep, args):
    rep.read(args.challenge)
    return textio.load_challenge(args.challenge, args.max_vertices or 200000)


def cmd_protocol_verify(args, rep):
    from .protocols import verify_protocol
    c = _load_challenge(rep, args)
    ms = [_load_machine(rep, p, c.arena) for p in args.machines]
    if len(ms) == 1:
        ms = ms[0]
        if ms.scope != ALL:
            raise InputError("a single machine must have scope=all")
    v = verify_protocol(c, ms)
    rep.stats = dict(v.stats)
    rep.verdict = v.outcome
    rep.say(v.outcome)
    if v.correct is not None:
        rep.say("correct: %s" % ("yes" if v.correct else "no"))
        if v.incorrect_outcome is not None:
            rep.say("incorrect outcome: %s" % render_lasso(v.incorrect_outcome))
    rep.payload = {"correct": v.correct, "failure": v.failure}
    if v.failure == "payoff":
        rep.say("agent %s is wronged on the outcome: %s" % (v.witness["agent"], render_lasso(v.witness["outcome"])))
        rep.payload["wronged"] = v.witness["agent"]
        rep.payload["outcome"] = {"prefix": list(v.witness["outcome"].prefix),
                                  "cycle": list(v.witness["outcome"].cycle)}
    elif v.failure == "sse":
        for line in witness_lines(v.witness):
            rep.say(line)
        rep.payload["witness"] = v.witness.to_dict()
    rep.exit_code = 0 if v.safe else 1


def cmd_protocol_exists(args, rep):
    from .protocols import exists_safe_protocol
    c = _load_challenge(rep, args)
    ok, m, verdict = exists_safe_protocol(c, args.max_vertices)
    rep.stats = dict(verdict.stats)
    if ok:
        rep.verdict, rep.exit_code = "exists", 0
        rep.say("EXISTS")
        rep.stats["machine_states"] = len(m.states)
        if args.emit_machine:
            _write(args.emit_machine, textio.format_machine(m))
            rep.say("machine written to %s (%d states)" % (args.emit_machine, len(m.states)))
    else:
        rep.verdict, rep.exit_code = "not-exists", 1
        rep.say("NOT-EXISTS")


def cmd_protocol_compile(args, rep):
    from .protocols import compile_challenge
    c = _load_challenge(rep, args)
    game, target, _ = compile_challenge(c)
    refs = {}
    extra = {}
    if isinstance(game, OmegaRegularGame):
        stem = os.path.splitext(os.path.basename(args.output))[0]
        keys = list(game.arena.players) + (["Corr"] if game.correctness is not None else [])
        for k in keys:
            a = game.objectives[k] if k != "Corr" else game.correctness
            refs[k] = "%s_%s.aut" % (stem, k.lower())
            extra[refs[k]] = textio.format_automaton(a)
    _write(args.output, textio.format_game(game, refs))
    for name, text in extra.items():
        _write(os.path.join(os.path.dirname(args.output), name), text)
    rep.verdict, rep.exit_code = "compiled", 0
    rep.payload = {"target": bits(target), "output": args.output}
    rep.say("game written to %s; target payoff %s" % (args.output, bits(target)))


def cmd_fmt(args, rep):
    rep.read(args.file)
    text = textio._read(args.file)
    out = textio.format_file(text, args.file)
    if args.dot:
        if textio.file_kind(text, args.file) != "game":
            raise InputError("--dot is only available for game files")
        _write(args.dot, arena_dot(textio.parse_game(text, args.file, load_automata=False).arena))
    rep.verdict, rep.exit_code = "formatted", 0
    if args.output:
        _write(args.output, out)
    else:
        rep.lines.append(out.rstrip("\n"))


def cmd_oracle_check(args, rep):
    game = _load_game(rep, args.game)
    if not isinstance(game, ParityGame):
        raise InputError("the oracle handles parity games only")
    m = _load_machine(rep, args.machine, game.arena)
    if m.scope != ALL or not is_deterministic(m):
        raise InputError("the oracle needs a deterministic machine with scope=all")
    v = oracle_witness_search(game, m, args.bound)
    rep.verdict = v.outcome
    rep.payload = {k: (bits(x) if "payoff" in k else x) for k, x in v.info.items()}
    rep.say(v.outcome.upper())
    for k, x in rep.payload.items():
        rep.say("%s: %s" % (k, " ".join(map(str, x)) if isinstance(x, (list, tuple)) else x))
    rep.exit_code = 0 if v.all_sse else 1


def cmd_oracle_solve(args, rep):
    game = _load_game(rep, args.game)
    if not isinstance(game, ParityGame) or len(game.arena.players) != 2:
        raise InputError("oracle solve needs a two-player parity game")
    a = game.arena
    p0 = a.players[0]
    owner = {v: 0 if a.owner[v] == p0 else 1 for v in a.vertices}
    prio = {v: game.objectives[p0][v] for v in a.vertices}
    w = oracle_solve_parity(a.vertices, owner, a.succ, prio, a.initial)
    winner = a.players[w]
    rep.verdict = "winner:%s" % winner
    rep.payload = {"winner": winner, "objective_of": p0}
    rep.say("%s wins the objective of %s from %s" % (winner, p0, a.initial))
    rep.exit_code = 0 if w == 0 else 1


def cmd_gen(args, rep):
    from . import generators
    rng = random.Random(args.seed)
    files, info = generators.generate(args.kind, rng, args)
    os.makedirs(args.out, exist_ok=True)
    for name, text in files.items():
        _write(os.path.join(args.out, name), text)
    rep.verdict, rep.exit_code = "generated", 0
    rep.payload = {"files": sorted(files), "info": info}
    for name in sorted(files):
        rep.say(os.path.join(args.out, name))
    for k, x in info.items():
        rep.say("%s: %s" % (k, x))


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")
    common.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--max-vertices", type=int, default=None,
                        help="abort when a constructed graph exceeds this size")

    p = argparse.ArgumentParser(prog="ssetool", description="Strong secure equilibrium checking and synthesis")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("check", parents=[common], help="check an all-players machine")
    s.add_argument("game")
    s.add_argument("machine")
    s.add_argument("--dot", help="write the product graph in DOT format")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("check-comp", parents=[common], help="check a profile of per-player machines")
    s.add_argument("game")
    s.add_argument("machines", nargs="+")
    s.add_argument("--dot", help="write the product graph in DOT format")
    s.set_defaults(fn=cmd_check_comp)

    s = sub.add_parser("exists", parents=[common], help="decide existence of an SSE with a payoff")
    s.add_argument("game")
    s.add_argument("--payoff", required=True, help="bitstring in player order")
    s.add_argument("--corr", help="automaton file for the correctness condition")
    s.add_argument("--emit-machine", help="write the extracted machine here")
    s.set_defaults(fn=cmd_exists)

    pr = sub.add_parser("protocol", help="protocol challenges")
    psub = pr.add_subparsers(dest="pcmd", required=True)
    s = psub.add_parser("verify", parents=[common], help="verify a protocol against a challenge")
    s.add_argument("challenge")
    s.add_argument("machines", nargs="+")
    s.set_defaults(fn=cmd_protocol_verify)
    s = psub.add_parser("exists", parents=[common], help="decide whether a safe protocol exists")
    s.add_argument("challenge")
    s.add_argument("--emit-machine")
    s.set_defaults(fn=cmd_protocol_exists)
    s = psub.add_parser("compile", parents=[common], help="write the game a challenge compiles to")
    s.add_argument("challenge")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(fn=cmd_protocol_compile)

    s = sub.add_parser("gen", parents=[common], help="generate model files")
    s.add_argument("kind", choices=["sat", "qsat", "dfai", "zg", "tripartite", "naive", "ttp", "random"])
    s.add_argument("-o", "--out", default=".", help="output directory")
    s.add_argument("--theta", type=int, default=3, help="deadline of the Zhou-Gollmann machine")
    s.add_argument("--variables", type=int, default=3)
    s.add_argument("--clauses", type=int, default=3)
    s.add_argument("--automata", type=int, default=2, help="number of DFAs for dfai")
    s.add_argument("--states", type=int, default=3, help="maximum DFA states for dfai")
    s.set_defaults(fn=cmd_gen)

    orc = sub.add_parser("oracle", help="brute-force reference procedures")
    osub = orc.add_subparsers(dest="ocmd", required=True)
    s = osub.add_parser("check", parents=[common], help="exhaustive harmful-deviation search")
    s.add_argument("game")
    s.add_argument("machine")
    s.add_argument("--bound", type=int, default=None)
    s.set_defaults(fn=cmd_oracle_check)
    s = osub.add_parser("solve", parents=[common], help="two-player parity game by strategy enumeration")
    s.add_argument("game")
    s.set_defaults(fn=cmd_oracle_solve)

    s = sub.add_parser("fmt", parents=[common], help="print a file in canonical form")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--dot", help="write the arena of a game file in DOT format")
    s.set_defaults(fn=cmd_fmt)
    return p


def run_cli(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    rep = Report(argv)
    start = time.perf_counter()
    try:
        args.fn(args, rep)
    except (InputError, DomainError) as e:
        rep.verdict, rep.exit_code = "error", 2
        rep.payload = {"error": str(e)}
        if args.json:
            print(rep.to_json(), file=stdout)
        else:
            print("error: %s" % e, file=stderr)
        return 2
    if args.json:
        wall = round(time.perf_counter() - start, 3) if args.timing else None
        print(rep.to_json(wall), file=stdout)
    else:
        for line in rep.lines:
            print(line, file=stdout)
    return rep.exit_code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
