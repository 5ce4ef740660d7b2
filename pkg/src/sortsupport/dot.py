"""Graphviz DOT rendering of an intersection graph."""

from __future__ import annotations

from typing import Optional

from .instance import SortInstance, build_intersection_graph
from .reduction import ReductionTrace

EDGE_COLORS = {
    "up": "red",
    "down": "blue",
    "up-linking": "orange",
    "down-linking": "purple",
    "lateral": "darkgreen",
    "completion": "gray",
}


def _quote(text: str) -> str:
    # backslashes are left alone so that "\n" stays a DOT line break
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(inst: SortInstance, trace: Optional[ReductionTrace] = None) -> str:
    """U vertices on the left, V on the right, one edge per intersecting pair.

    With a trace, vertices carry gadget labels and edges are colored and
    labeled by kind. Edges of the instance that the trace does not know about
    are drawn black and labeled ``unexpected``.
    """
    n = inst.n
    kinds = {}
    if trace is not None:
        kinds = {(e.u, e.v): e.kind for e in trace.edges}
    lines = ["graph intersection {", "  rankdir=LR;", "  node [shape=circle, fontsize=10];"]
    for side, doms in (("u", inst.u_domains), ("v", inst.v_domains)):
        lines.append(f"  subgraph cluster_{side} {{")
        lines.append(f"    label={_quote(side.upper())};")
        for i in range(n):
            name = f"{side}{i + 1}"
            if trace is not None:
                labels = trace.u_labels if side == "u" else trace.v_labels
                text = f"{labels[i]}\\n{name}"
            else:
                text = name
            lines.append(f"    {name} [label={_quote(text)}, tooltip={_quote(str(doms[i]))}];")
        lines.append("  }")
    graph = build_intersection_graph(inst)
    for i, j in sorted(graph.edges()):
        attrs = ""
        if trace is not None:
            kind = kinds.get((i, j), "unexpected")
            color = EDGE_COLORS.get(kind, "black")
            attrs = f" [color={color}, label={_quote(kind)}]"
        lines.append(f"  u{i + 1} -- v{j + 1}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
