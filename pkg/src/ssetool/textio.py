"""Section-based text formats for games, automata, machines, exchange specs and
challenges.  `#` starts a comment; unknown keys are errors carrying file, line
and column."""

import os
import re

from .games import (Arena, Coloring, DomainError, OmegaRegularGame, ParityAutomaton, ParityGame,
                    validate_arena, vertex_automaton)
from .strategies import ALL, MealyMachine

TOKEN = re.compile(r"\S+")
NAME = re.compile(r"^[^\s#=\[\]{}]+$")


class ParseError(DomainError):
    def __init__(self, msg, path="<input>", line=0, col=0):
        super().__init__("%s:%d:%d: %s" % (path, line, col, msg))
        self.path = path
        self.line = line
        self.col = col
        self.msg = msg


class Line:
    def __init__(self, path, no, text, tokens):
        self.path = path
        self.no = no
        self.text = text
        self.tokens = tokens  # [(token, column)]

    def error(self, msg, i=0):
        col = self.tokens[i][1] if i < len(self.tokens) else len(self.text) + 1
        return ParseError(msg, self.path, self.no, col)

    def words(self):
        return [t for t, _ in self.tokens]


def _lines(text, path):
    out = []
    for no, raw in enumerate(text.split("\n"), 1):
        body = raw.split("#", 1)[0].rstrip()
        toks = [(m.group(0), m.start() + 1) for m in TOKEN.finditer(body)]
        if toks and toks[-1][0] == ";":
            toks.pop()
        elif toks and toks[-1][0].endswith(";") and not toks[-1][0].startswith("["):
            t, c = toks[-1]
            toks[-1] = (t[:-1], c)
        if toks:
            out.append(Line(path, no, body, toks))
    return out


def _sections(text, path):
    """[(header words, header line, [body lines])]."""
    secs = []
    for ln in _lines(text, path):
        first = ln.tokens[0][0]
        if first.startswith("["):
            body = ln.text.strip()
            if not body.endswith("]"):
                raise ln.error("section header must end with ']'")
            words = body[1:-1].split()
            if not words:
                raise ln.error("empty section header")
            secs.append((words, ln, []))
        else:
            if not secs:
                raise ln.error("content before the first section header")
            secs[-1][2].append(ln)
    return secs


def _kv(ln, i, key):
    tok = ln.tokens[i][0]
    if not tok.startswith(key + "="):
        raise ln.error("expected %s=..." % key, i)
    val = tok[len(key) + 1:]
    if not val:
        raise ln.error("empty value for %s" % key, i)
    return val


def _nat(ln, i, text):
    if not text.isdigit():
        raise ln.error("expected a natural number, got %r" % text, i)
    return int(text)


def _need(ln, n, usage):
    if len(ln.tokens) != n:
        raise ln.error("expected: %s" % usage, min(n, len(ln.tokens)))


def _read(path):
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise ParseError("cannot read file: %s" % e.strerror, path, 0, 0) from None


def _check_name(x):
    if not isinstance(x, str) or not NAME.match(x):
        raise DomainError("%r cannot be written as a name in the text format" % (x,))
    return x


def _namer(items, prefix):
    """Printable names: keep plain string names, otherwise number them."""
    items = list(items)
    if all(isinstance(x, str) and NAME.match(x) for x in items):
        return {x: x for x in items}
    return {x: "%s%d" % (prefix, i) for i, x in enumerate(items)}


# ---------------------------------------------------------------- automata

def parse_automaton(text, path="<input>", alphabet=None):
    states, colors, delta = [], {}, {}
    initial = None
    init_line = None
    lines = []
    if any(ln.text.lstrip().startswith("[") for ln in _lines(text, path)):
        for words, hdr, body in _sections(text, path):
            if words != ["automaton"]:
                raise hdr.error("unknown section [%s]" % " ".join(words))
            lines += body
    else:
        lines = _lines(text, path)
    for ln in lines:
        key = ln.tokens[0][0]
        if key == "state":
            _need(ln, 3, "state <name> color=<nat>")
            s = ln.tokens[1][0]
            if s in colors:
                raise ln.error("duplicate state %s" % s, 1)
            states.append(s)
            colors[s] = _nat(ln, 2, _kv(ln, 2, "color"))
        elif key == "initial":
            _need(ln, 2, "initial <state>")
            if initial is not None:
                raise ln.error("initial state given twice")
            initial, init_line = ln.tokens[1][0], ln
        elif key == "trans":
            _need(ln, 4, "trans <state> <vertex> <state>")
            s, x, t = ln.words()[1:]
            if (s, x) in delta:
                raise ln.error("duplicate transition", 1)
            delta[(s, x)] = (t, ln)
        else:
            raise ln.error("unknown key %r" % key)
    if initial is None:
        raise ParseError("missing initial state", path, 1, 1)
    if initial not in colors:
        raise init_line.error("unknown state %s" % initial, 1)
    letters = []
    for (s, x), (t, ln) in delta.items():
        if s not in colors:
            raise ln.error("unknown state %s" % s, 1)
        if t not in colors:
            raise ln.error("unknown state %s" % t, 3)
        if x not in letters:
            letters.append(x)
    if alphabet is not None:
        for (s, x), (t, ln) in delta.items():
            if x not in alphabet:
                raise ln.error("letter %s is not an arena vertex" % x, 2)
        letters = list(alphabet)
    a = ParityAutomaton(letters, states, initial, {k: v[0] for k, v in delta.items()}, colors)
    probs = a.validate()
    if probs:
        raise ParseError(probs[0], path, 1, 1)
    return a


def format_automaton(a):
    sn = _namer(a.states, "q")
    out = ["[automaton]"]
    for s in a.states:
        out.append("state %s color=%d" % (sn[s], a.coloring[s]))
    out.append("initial %s" % sn[a.initial])
    for s in a.states:
        for x in a.alphabet:
            out.append("trans %s %s %s" % (sn[s], _check_name(x), sn[a.delta[(s, x)]]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- games

class GameDoc:
    """Parsed game file: arena, per-objective sources, optional vertex labels."""

    def __init__(self, arena, objectives, correctness, labels, path="<input>"):
        self.arena = arena
        self.objectives = objectives  # player -> ("colors", Coloring) | ("automaton", ref, automaton)
        self.correctness = correctness
        self.labels = labels
        self.path = path

    def complete(self):
        return all(p in self.objectives for p in self.arena.players)

    def game(self):
        if not self.complete():
            missing = [p for p in self.arena.players if p not in self.objectives]
            raise ParseError("no objective for players %s" % ", ".join(missing), self.path, 1, 1)
        srcs = [self.objectives[p] for p in self.arena.players]
        if self.correctness is not None:
            srcs.append(self.correctness)
        if all(s[0] == "colors" for s in srcs):
            corr = self.correctness[1] if self.correctness else None
            return ParityGame(self.arena, {p: self.objectives[p][1] for p in self.arena.players}, corr)

        def auto(s):
            return s[2] if s[0] == "automaton" else vertex_automaton(self.arena, s[1])
        corr = auto(self.correctness) if self.correctness else None
        return OmegaRegularGame(self.arena, {p: auto(self.objectives[p]) for p in self.arena.players}, corr)


def parse_game(text, path="<input>", load_automata=True):
    base = os.path.dirname(path) if path != "<input>" else "."
    secs = _sections(text, path)
    arena_sec = [s for s in secs if s[0] == ["arena"]]
    if len(arena_sec) != 1:
        raise ParseError("expected exactly one [arena] section", path, secs[0][1].no if secs else 1, 1)
    players, vertices, owner, edges, labels = None, [], {}, [], {}
    initial = None
    for ln in arena_sec[0][2]:
        key = ln.tokens[0][0]
        if key == "players":
            if players is not None:
                raise ln.error("players declared twice")
            players = ln.words()[1:]
            if not players or len(set(players)) != len(players):
                raise ln.error("players must be distinct and nonempty", 1)
        elif key == "vertex":
            if len(ln.tokens) not in (3, 4):
                raise ln.error("expected: vertex <name> owner=<player> [labels=a,b]")
            v = ln.tokens[1][0]
            if v in owner:
                raise ln.error("duplicate vertex %s" % v, 1)
            vertices.append(v)
            owner[v] = _kv(ln, 2, "owner")
            if len(ln.tokens) == 4:
                labels[v] = frozenset(_kv(ln, 3, "labels").split(","))
        elif key == "edge":
            _need(ln, 3, "edge <u> <v>")
            edges.append((ln.tokens[1][0], ln.tokens[2][0], ln))
        elif key == "initial":
            _need(ln, 2, "initial <vertex>")
            if initial is not None:
                raise ln.error("initial vertex given twice")
            initial = (ln.tokens[1][0], ln)
        else:
            raise ln.error("unknown key %r" % key)
    hdr = arena_sec[0][1]
    if players is None:
        players = []
        for v in vertices:
            if owner[v] not in players:
                players.append(owner[v])
    for ln in arena_sec[0][2]:
        if ln.tokens[0][0] == "vertex" and owner[ln.tokens[1][0]] not in players:
            raise ln.error("unknown player %s" % owner[ln.tokens[1][0]], 2)
    for u, v, ln in edges:
        if u not in owner:
            raise ln.error("unknown vertex %s" % u, 1)
        if v not in owner:
            raise ln.error("unknown vertex %s" % v, 2)
    if initial is None:
        raise hdr.error("missing initial vertex")
    if initial[0] not in owner:
        raise initial[1].error("unknown vertex %s" % initial[0], 1)
    arena = Arena(players, vertices, owner, [(u, v) for u, v, _ in edges], initial[0])
    probs = validate_arena(arena)
    if probs:
        raise hdr.error(probs[0])
    arena.labels = labels

    def objective(words, hdr, body):
        if not body:
            raise hdr.error("empty objective section")
        if body[0].tokens[0][0] == "automaton":
            _need(body[0], 2, "automaton <file>")
            if len(body) > 1:
                raise body[1].error("nothing may follow an automaton reference")
            ref = body[0].tokens[1][0]
            a = None
            if load_automata:
                full = os.path.join(base, ref)
                a = parse_automaton(_read(full), full, alphabet=arena.vertices)
            return ("automaton", ref, a)
        colors = {}
        for ln in body:
            if ln.tokens[0][0] != "colors":
                raise ln.error("unknown key %r" % ln.tokens[0][0])
            for i, (tok, _) in enumerate(ln.tokens[1:], 1):
                v, eq, c = tok.rpartition("=")
                if not eq or not v:
                    raise ln.error("expected <vertex>=<color>", i)
                if v not in owner:
                    raise ln.error("unknown vertex %s" % v, i)
                if v in colors:
                    raise ln.error("vertex %s colored twice" % v, i)
                colors[v] = _nat(ln, i, c)
        missing = [v for v in vertices if v not in colors]
        if missing:
            raise hdr.error("no color for vertex %s" % missing[0])
        return ("colors", Coloring(colors))

    objectives = {}
    correctness = None
    for words, hdr, body in secs:
        if words == ["arena"]:
            continue
        if words[0] == "objective" and len(words) == 2:
            p = words[1]
            if p not in players:
                raise hdr.error("unknown player %s" % p)
            if p in objectives:
                raise hdr.error("duplicate objective for %s" % p)
            objectives[p] = objective(words, hdr, body)
        elif words == ["correctness"]:
            if correctness is not None:
                raise hdr.error("duplicate correctness section")
            correctness = objective(words, hdr, body)
        else:
            raise hdr.error("unknown section [%s]" % " ".join(words))
    return GameDoc(arena, objectives, correctness, labels, path)


def load_game_doc(path, load_automata=True):
    return parse_game(_read(path), path, load_automata)


def load_game(path):
    return load_game_doc(path).game()


def _format_objective(src, vertices):
    if src[0] == "automaton":
        return ["automaton %s" % src[1]]
    col = src[1]
    out = []
    row = []
    for v in vertices:
        row.append("%s=%d" % (v, col[v]))
        if len(row) == 8:
            out.append("colors " + " ".join(row))
            row = []
    if row:
        out.append("colors " + " ".join(row))
    return out


def format_game_doc(doc):
    a = doc.arena
    out = ["[arena]", "players " + " ".join(_check_name(p) for p in a.players)]
    for v in a.vertices:
        lab = doc.labels.get(v) if doc.labels else None
        extra = " labels=%s" % ",".join(sorted(lab)) if lab else ""
        out.append("vertex %s owner=%s%s" % (_check_name(v), a.owner[v], extra))
    for u in a.vertices:
        for v in a.succ[u]:
            out.append("edge %s %s" % (u, v))
    out.append("initial %s" % a.initial)
    for p in a.players:
        if p in doc.objectives:
            out.append("")
            out.append("[objective %s]" % p)
            out += _format_objective(doc.objectives[p], a.vertices)
    if doc.correctness is not None:
        out.append("")
        out.append("[correctness]")
        out += _format_objective(doc.correctness, a.vertices)
    return "\n".join(out) + "\n"


def game_doc_of(game, automaton_refs=None):
    """GameDoc for an in-memory game; automaton objectives need file names in
    `automaton_refs` (player or 'Corr' -> file name)."""
    refs = automaton_refs or {}
    arena = game.arena

    def src(key, o):
        if isinstance(o, ParityAutomaton):
            if key not in refs:
                raise DomainError("no file name for the automaton of %s" % key)
            return ("automaton", refs[key], o)
        return ("colors", o)
    objectives = {p: src(p, game.objectives[p]) for p in arena.players}
    corr = None if game.correctness is None else src("Corr", game.correctness)
    return GameDoc(arena, objectives, corr, getattr(arena, "labels", {}) or {})


def format_game(game, automaton_refs=None):
    return format_game_doc(game_doc_of(game, automaton_refs))


def format_arena(arena):
    return format_game_doc(GameDoc(arena, {}, None, getattr(arena, "labels", {}) or {}))


# ---------------------------------------------------------------- machines

def parse_machine(text, path="<input>"):
    secs = _sections(text, path)
    if len(secs) != 1:
        raise ParseError("expected exactly one [machine ...] section", path, 1, 1)
    words, hdr, body = secs[0]
    if words[0] != "machine" or len(words) != 2 or not words[1].startswith("scope="):
        raise hdr.error("expected [machine scope=<player|all>]")
    scope = words[1][len("scope="):]
    if not scope:
        raise hdr.error("empty scope")
    states, rows = [], []
    initial = None
    for ln in body:
        key = ln.tokens[0][0]
        if key == "state":
            _need(ln, 2, "state <name>")
            if ln.tokens[1][0] in states:
                raise ln.error("duplicate state %s" % ln.tokens[1][0], 1)
            states.append(ln.tokens[1][0])
        elif key == "initial":
            _need(ln, 2, "initial <state>")
            if initial is not None:
                raise ln.error("initial state given twice")
            initial = (ln.tokens[1][0], ln)
        elif key == "t":
            w = ln.words()
            if len(w) == 5 and w[3] == "->":
                rows.append((w[1], w[2], w[4], None, ln))
            elif len(w) == 7 and w[3] == "->" and w[5] == "/":
                rows.append((w[1], w[2], w[4], w[6], ln))
            else:
                raise ln.error("expected: t <state> <vertex> -> <state> [/ <vertex>]")
        else:
            raise ln.error("unknown key %r" % key)
    if initial is None:
        raise hdr.error("missing initial state")
    sset = set(states)
    if initial[0] not in sset:
        raise initial[1].error("unknown state %s" % initial[0], 1)
    tuples = []
    for s, u, t, w, ln in rows:
        if s not in sset:
            raise ln.error("unknown state %s" % s, 1)
        if t not in sset:
            raise ln.error("unknown state %s" % t, 4)
        tuples.append((s, u, t) if w is None else (s, u, t, w))
    return MealyMachine.from_tuples(ALL if scope == ALL else scope, states, initial[0], tuples)


def load_machine(path):
    return parse_machine(_read(path), path)


def format_machine(m):
    sn = _namer(m.states, "s")
    out = ["[machine scope=%s]" % m.scope]
    for s in m.states:
        out.append("state %s" % sn[s])
    out.append("initial %s" % sn[m.initial])
    order = {s: i for i, s in enumerate(m.states)}
    vorder = {}
    for (s, u) in m.table:
        vorder.setdefault(u, len(vorder))
    for (s, u) in sorted(m.table, key=lambda k: (order[k[0]], vorder[k[1]])):
        for t, w in m.table[(s, u)]:
            if w is None:
                out.append("t %s %s -> %s" % (sn[s], _check_name(u), sn[t]))
            else:
                out.append("t %s %s -> %s / %s" % (sn[s], _check_name(u), sn[t], _check_name(w)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- exchange specs

def parse_exchange(text, path="<input>"):
    from .protocols.message_exchange import MessageExchangeSpec, Rule
    secs = _sections(text, path)
    if len(secs) != 1 or secs[0][0] != ["exchange"]:
        raise ParseError("expected exactly one [exchange] section", path, 1, 1)
    agents = actions = None
    rules = []
    for ln in secs[0][2]:
        key = ln.tokens[0][0]
        if key == "agents":
            agents = ln.words()[1:]
        elif key == "actions":
            actions = ln.words()[1:]
        elif key == "rule":
            m = re.match(r"^\s*rule\s+(\S+)\s+requires\s+\{([^}]*)\}\s+sender=(\S+)\s*$", ln.text)
            if not m:
                raise ln.error("expected: rule <action> requires {a, b} sender=<agent>")
            req = [x.strip() for x in m.group(2).split(",") if x.strip()]
            rules.append((m.group(1), req, m.group(3), ln))
        else:
            raise ln.error("unknown key %r" % key)
    hdr = secs[0][1]
    if not agents:
        raise hdr.error("missing agents line")
    if not actions:
        raise hdr.error("missing actions line")
    for a, req, s, ln in rules:
        if a not in actions:
            raise ln.error("unknown action %s" % a, 1)
        if s not in agents:
            raise ln.error("unknown agent %s" % s, len(ln.tokens) - 1)
        for r in req:
            if r not in actions:
                raise ln.error("unknown action %s" % r, 3)
    return MessageExchangeSpec(agents, actions, [Rule(a, req, s) for a, req, s, _ in rules])


def format_exchange(spec):
    out = ["[exchange]", "agents " + " ".join(spec.agents), "actions " + " ".join(spec.actions)]
    for r in spec.rules:
        req = ", ".join(a for a in spec.actions if a in r.requires)
        out.append("rule %s requires {%s} sender=%s" % (r.action, req, r.sender))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- challenges

EXPR_TOKEN = re.compile(r"\s*(->|[(),&|!]|[A-Za-z0-9_.^:/\-+]+)")


class _Expr:
    def __init__(self, text, ln, col0):
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = EXPR_TOKEN.match(text, pos)
            if not m:
                raise ParseError("unexpected character %r" % text[pos], ln.path, ln.no, col0 + pos)
            self.toks.append((m.group(1), col0 + m.start(1)))
            pos = m.end()
        self.i = 0
        self.ln = ln
        self.end = col0 + len(text)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def error(self, msg):
        col = self.toks[self.i][1] if self.i < len(self.toks) else self.end
        return ParseError(msg, self.ln.path, self.ln.no, col)

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise self.error("expected %s" % (want or "more input"))
        self.i += 1
        return t

    def done(self):
        if self.peek() is not None:
            raise self.error("unexpected %r" % self.peek())


TEMPLATES = ("reach_avoid", "response", "buchi", "cobuchi", "union", "intersection", "complement",
             "never", "always", "automaton")


def _pred(e):
    left = _pred_and(e)
    items = [left]
    while e.peek() == "|":
        e.take()
        items.append(_pred_and(e))
    return items[0] if len(items) == 1 else ("or", items)


def _pred_and(e):
    items = [_pred_unary(e)]
    while e.peek() == "&":
        e.take()
        items.append(_pred_unary(e))
    return items[0] if len(items) == 1 else ("and", items)


def _pred_unary(e):
    t = e.peek()
    if t == "!":
        e.take()
        return ("not", _pred_unary(e))
    if t == "(":
        e.take()
        x = _pred(e)
        e.take(")")
        return x
    if t is None or t in "()&|,!" or t == "->":
        raise e.error("expected a predicate")
    e.take()
    if t in ("true", "false"):
        return ("const", t == "true")
    return ("id", t, e.toks[e.i - 1][1])


def _template(e):
    t = e.peek()
    if t not in TEMPLATES:
        raise e.error("unknown template %r" % t)
    e.take()
    if t in ("never", "always"):
        return (t,)
    if t == "automaton":
        return ("automaton", e.take())
    e.take("(")
    args = []
    while True:
        if t in ("union", "intersection", "complement"):
            args.append(_template(e))
        elif t == "response":
            p = _pred(e)
            e.take("->")
            args.append((p, _pred(e)))
        else:
            args.append(_pred(e))
        if e.peek() == ",":
            e.take()
            continue
        e.take(")")
        break
    want = {"reach_avoid": 2, "buchi": 1, "cobuchi": 1, "complement": 1}.get(t)
    if want is not None and len(args) != want:
        raise e.error("%s takes %d argument(s)" % (t, want))
    return (t, args)


def show_pred(p, top=True):
    op = p[0]
    if op == "id":
        return p[1]
    if op == "const":
        return "true" if p[1] else "false"
    if op == "not":
        return "!" + show_pred(p[1], False)
    sep = " & " if op == "and" else " | "
    s = sep.join(show_pred(x, False) for x in p[1])
    return s if top else "(" + s + ")"


def show_template(t):
    op = t[0]
    if op in ("never", "always"):
        return op
    if op == "automaton":
        return "automaton " + t[1]
    if op == "response":
        return "response(%s)" % ", ".join("%s -> %s" % (show_pred(p), show_pred(q)) for p, q in t[1])
    if op in ("union", "intersection", "complement"):
        return "%s(%s)" % (op, ", ".join(show_template(x) for x in t[1]))
    return "%s(%s)" % (op, ", ".join(show_pred(x) for x in t[1]))


class ChallengeDoc:
    def __init__(self, arena_ref, agents, infrastructure, preds, wrong, compliance, correctness, path):
        self.arena_ref = arena_ref
        self.agents = agents
        self.infrastructure = infrastructure
        self.preds = preds            # name -> ast (ordered)
        self.wrong = wrong            # agent -> template ast
        self.compliance = compliance
        self.correctness = correctness
        self.path = path


def parse_challenge(text, path="<input>"):
    secs = _sections(text, path)
    if len(secs) != 1 or secs[0][0] != ["challenge"]:
        raise ParseError("expected exactly one [challenge] section", path, 1, 1)
    hdr = secs[0][1]
    arena_ref = None
    agents, infra = [], None
    preds, wrong = {}, {}
    compliance = correctness = None

    def rhs(ln, start_tok):
        col = ln.tokens[start_tok][1]
        return _Expr(ln.text[col - 1:], ln, col)

    for ln in secs[0][2]:
        key = ln.tokens[0][0]
        if key == "agent":
            if len(ln.tokens) == 3 and ln.tokens[2][0] == "infrastructure":
                if infra is not None:
                    raise ln.error("second infrastructure agent", 2)
                infra = ln.tokens[1][0]
            elif len(ln.tokens) != 2:
                raise ln.error("expected: agent <name> [infrastructure]")
            if ln.tokens[1][0] in agents:
                raise ln.error("duplicate agent", 1)
            agents.append(ln.tokens[1][0])
            continue
        if key == "arena":
            if len(ln.tokens) != 3 or ln.tokens[1][0] != "=":
                raise ln.error("expected: arena = <file|builtin:name>")
            if arena_ref is not None:
                raise ln.error("arena given twice")
            arena_ref = ln.tokens[2][0]
            continue
        if key == "pred":
            if len(ln.tokens) < 4 or ln.tokens[2][0] != "=":
                raise ln.error("expected: pred <name> = <expression>")
            name = ln.tokens[1][0]
            if name in preds:
                raise ln.error("duplicate predicate %s" % name, 1)
            e = rhs(ln, 3)
            preds[name] = _pred(e)
            e.done()
            continue
        if key == "wrong":
            if len(ln.tokens) < 4 or ln.tokens[2][0] != "=":
                raise ln.error("expected: wrong <agent> = <template>")
            a = ln.tokens[1][0]
            if a in wrong:
                raise ln.error("duplicate wronging condition for %s" % a, 1)
            e = rhs(ln, 3)
            wrong[a] = (_template(e), ln)
            e.done()
            continue
        if key in ("compliance", "correctness"):
            if len(ln.tokens) < 3 or ln.tokens[1][0] != "=":
                raise ln.error("expected: %s = <template>" % key)
            e = rhs(ln, 2)
            t = _template(e)
            e.done()
            if key == "compliance":
                if compliance is not None:
                    raise ln.error("compliance given twice")
                compliance = t
            else:
                if correctness is not None:
                    raise ln.error("correctness given twice")
                correctness = t
            continue
        raise ln.error("unknown key %r" % key)
    if arena_ref is None:
        raise hdr.error("missing arena")
    for a, (t, ln) in wrong.items():
        if a not in agents:
            raise ln.error("unknown agent %s" % a, 1)
    return ChallengeDoc(arena_ref, agents, infra, preds, {a: t for a, (t, _) in wrong.items()},
                        compliance, correctness, path)


def format_challenge(doc):
    out = ["[challenge]", "arena = %s" % doc.arena_ref]
    for a in doc.agents:
        out.append("agent %s%s" % (a, " infrastructure" if a == doc.infrastructure else ""))
    for name, p in doc.preds.items():
        out.append("pred %s = %s" % (name, show_pred(p)))
    for a in doc.agents:
        if a in doc.wrong:
            out.append("wrong %s = %s" % (a, show_template(doc.wrong[a])))
    if doc.compliance is not None:
        out.append("compliance = %s" % show_template(doc.compliance))
    if doc.correctness is not None:
        out.append("correctness = %s" % show_template(doc.correctness))
    return "\n".join(out) + "\n"


BUILTIN = re.compile(r"^builtin:([a-z_]+)(?:\((\d+)\))?$")


def builtin_arena(ref):
    from .protocols.exchanges import exchange_spec
    from .protocols.message_exchange import message_exchange_arena
    from .protocols.tripartite import tripartite_arena
    from .protocols.zhou_gollmann import zg_arena
    m = BUILTIN.match(ref)
    name = m.group(1) if m else None
    if name == "zg":
        return zg_arena()
    if name == "tripartite":
        return tripartite_arena()
    if name in ("naive", "ttp"):
        return message_exchange_arena(exchange_spec(name == "ttp"))
    raise DomainError("unknown builtin arena %s" % ref)


def load_arena_ref(ref, base, max_vertices=200000):
    """Arena named by a challenge: builtin, an [exchange] spec, or a game file."""
    from .protocols.message_exchange import message_exchange_arena
    if ref.startswith("builtin:"):
        arena = builtin_arena(ref)
    else:
        full = os.path.join(base, ref)
        text = _read(full)
        secs = _sections(text, full)
        if secs and secs[0][0] == ["exchange"]:
            arena = message_exchange_arena(parse_exchange(text, full), max_vertices)
        else:
            arena = parse_game(text, full, load_automata=False).arena
    if not hasattr(arena, "labels"):
        arena.labels = {}
    return arena


def _pred_fn(p, doc, arena, stack=()):
    op = p[0]
    if op == "const":
        return lambda v, b=p[1]: b
    if op == "id":
        name = p[1]
        if name in doc.preds:
            if name in stack:
                raise DomainError("predicate %s is defined in terms of itself" % name)
            return _pred_fn(doc.preds[name], doc, arena, stack + (name,))
        known = set(arena.vertices)
        for lab in arena.labels.values():
            known |= lab
        if name not in known:
            raise DomainError("unknown label or vertex %s" % name)
        labels = arena.labels
        return lambda v: v == name or name in labels.get(v, ())
    if op == "not":
        f = _pred_fn(p[1], doc, arena, stack)
        return lambda v: not f(v)
    fs = [_pred_fn(x, doc, arena, stack) for x in p[1]]
    if op == "and":
        return lambda v: all(f(v) for f in fs)
    return lambda v: any(f(v) for f in fs)


def build_objective(t, doc, arena, base):
    from .protocols import templates
    op = t[0]
    if op == "never":
        return templates.never(arena)
    if op == "always":
        return templates.always(arena)
    if op == "automaton":
        full = os.path.join(base, t[1])
        return parse_automaton(_read(full), full, alphabet=arena.vertices)
    if op == "reach_avoid":
        p, q = [_pred_fn(x, doc, arena) for x in t[1]]
        return templates.reach_avoid(arena, p, q)
    if op == "response":
        return templates.response(arena, [(_pred_fn(p, doc, arena), _pred_fn(q, doc, arena)) for p, q in t[1]])
    if op == "buchi":
        return templates.buchi(arena, _pred_fn(t[1][0], doc, arena))
    if op == "cobuchi":
        return templates.cobuchi(arena, _pred_fn(t[1][0], doc, arena))
    parts = [build_objective(x, doc, arena, base) for x in t[1]]
    if op == "complement":
        a = parts[0]
        if isinstance(a, ParityAutomaton):
            return ParityAutomaton(a.alphabet, a.states, a.initial, a.delta, a.coloring.complement())
        return a.complement()
    if any(isinstance(x, ParityAutomaton) for x in parts):
        raise DomainError("%s of automata is not supported" % op)
    return templates.union(arena, parts) if op == "union" else templates.intersection(arena, parts)


def challenge_from_doc(doc, max_vertices=200000):
    from .protocols.challenge import ProtocolChallenge
    base = os.path.dirname(doc.path) if doc.path != "<input>" else "."
    arena = load_arena_ref(doc.arena_ref, base, max_vertices)
    if list(arena.players) != list(doc.agents):
        raise DomainError("challenge agents %s differ from the arena players %s"
                          % (" ".join(doc.agents), " ".join(arena.players)))
    wrong = {a: build_objective(t, doc, arena, base) for a, t in doc.wrong.items()}
    comp = None if doc.compliance is None else build_objective(doc.compliance, doc, arena, base)
    corr = None if doc.correctness is None else build_objective(doc.correctness, doc, arena, base)
    name = os.path.splitext(os.path.basename(doc.path))[0]
    return ProtocolChallenge(arena, wrong, correctness=corr, compliance=comp,
                             infrastructure=doc.infrastructure, name=name)


def load_challenge(path, max_vertices=200000):
    return challenge_from_doc(parse_challenge(_read(path), path), max_vertices)


# ---------------------------------------------------------------- dispatch

def file_kind(text, path="<input>"):
    for ln in _lines(text, path):
        w = ln.text.strip()
        if w.startswith("[machine"):
            return "machine"
        if w.startswith("[challenge"):
            return "challenge"
        if w.startswith("[exchange"):
            return "exchange"
        if w.startswith("[automaton") or ln.tokens[0][0] in ("state", "trans"):
            return "automaton"
        return "game"
    raise ParseError("empty file", path, 1, 1)


def format_file(text, path="<input>"):
    """Canonical rendering of any supported file."""
    kind = file_kind(text, path)
    if kind == "machine":
        return format_machine(parse_machine(text, path))
    if kind == "challenge":
        return format_challenge(parse_challenge(text, path))
    if kind == "exchange":
        return format_exchange(parse_exchange(text, path))
    if kind == "automaton":
        return format_automaton(parse_automaton(text, path))
    return format_game_doc(parse_game(text, path, load_automata=False))
