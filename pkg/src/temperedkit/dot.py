"""Graphviz DOT text for posets, poset maps and complexes."""
from __future__ import annotations

from typing import Sequence

import networkx as nx


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_edges(n: int, leq: Sequence[Sequence[bool]]) -> list[tuple[int, int]]:
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i in range(n) for j in range(n) if i != j and leq[i][j])
    return sorted(nx.transitive_reduction(g).edges())


def poset_dot(name: str, labels: Sequence[str], leq: Sequence[Sequence[bool]]) -> str:
    """Hasse diagram, smaller elements at the bottom."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, lab in enumerate(labels):
        lines.append(f"  n{i} [label={_quote(lab)}];")
    for i, j in hasse_edges(len(labels), leq):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_map_dot(name: str, src_labels: Sequence[str], src_leq, tgt_labels: Sequence[str], tgt_leq,
                  mapping: Sequence[int]) -> str:
    """Two clusters joined by dashed edges x -> f(x)."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  compound=true;"]
    for tag, labels, leq in (("s", src_labels, src_leq), ("t", tgt_labels, tgt_leq)):
        lines.append(f"  subgraph cluster_{tag} {{")
        lines.append(f"    label={_quote('source' if tag == 's' else 'target')};")
        for i, lab in enumerate(labels):
            lines.append(f"    {tag}{i} [label={_quote(lab)}];")
        for i, j in hasse_edges(len(labels), leq):
            lines.append(f"    {tag}{i} -> {tag}{j};")
        lines.append("  }")
    for i, j in enumerate(mapping):
        lines.append(f"  s{i} -> t{j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(name: str, C) -> str:
    """Cells as nodes, codimension-one faces as edges."""
    from .poly import lam
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for x, t in enumerate(C.types):
        lines.append(f"  c{x} [label={_quote(f'{x}: ' + '.'.join(map(str, t)))}];")
    seen = set()
    for (x, iota), (y, _) in sorted(C.attach.items(), key=lambda kv: (kv[0][0], kv[0][1].text())):
        if lam.dimension(iota.source) == lam.dimension(C.types[x]) - 1 and (y, x) not in seen:
            seen.add((y, x))
            lines.append(f"  c{y} -> c{x};")
    lines.append("}")
    return "\n".join(lines) + "\n"
