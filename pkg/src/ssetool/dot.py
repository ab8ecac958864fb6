"""Graphviz DOT export of arenas and product graphs."""


def _q(x):
    return '"%s"' % str(x).replace("\\", "\\\\").replace('"', '\\"')


def arena_dot(arena):
    out = ["digraph arena {", "  rankdir=LR;"]
    for v in arena.vertices:
        shape = "doublecircle" if v == arena.initial else "ellipse"
        out.append("  %s [label=%s, shape=%s];" % (_q(v), _q("%s\\n%s" % (v, arena.owner[v])), shape))
    for u in arena.vertices:
        for v in arena.succ[u]:
            out.append("  %s -> %s;" % (_q(u), _q(v)))
    out.append("}")
    return "\n".join(out) + "\n"


def product_dot(graph, witness=None, state_name=str):
    """Deviating edges are dashed and labelled with their owner; the edges of
    a witness's deviating lasso are drawn in red."""
    red = set()
    if witness is not None:
        seq = list(witness.beta.vertices()) + [witness.beta.cycle[0]]
        red = set(zip(seq, seq[1:]))
    out = ["digraph product {", "  rankdir=LR;"]
    for i, (v, s) in enumerate(graph.nodes):
        out.append("  n%d [label=%s%s];" % (i, _q("%s / %s" % (v[0] if isinstance(v, tuple) else v, state_name(s))),
                                            ", shape=doublecircle" if i == 0 else ""))
    for i, row in enumerate(graph.succ):
        for j, lab in row:
            attrs = []
            if lab is not None:
                attrs += ["style=dashed", "label=%s" % _q("!" + str(lab))]
            if (i, j) in red:
                attrs.append("color=red")
            out.append("  n%d -> n%d%s;" % (i, j, " [%s]" % ", ".join(attrs) if attrs else ""))
    out.append("}")
    return "\n".join(out) + "\n"
