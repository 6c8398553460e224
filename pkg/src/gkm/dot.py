"""Graphviz DOT rendering of a GKM graph."""
from __future__ import annotations

import json
from typing import Sequence

from .graph import TwoFace
from .io import GraphDocument

__all__ = ["to_dot"]


def _q(x) -> str:
    return json.dumps(str(x))


def to_dot(doc: GraphDocument, faces: Sequence[TwoFace] = ()) -> str:
    """Undirected DOT graph; edges carry their forward label.

    Edges on any of ``faces`` are drawn dotted.  When an orientation is
    known, the edge is written from its lower to its higher endpoint.
    """
    g = doc.graph
    dotted = set()
    for f in faces:
        dotted |= f.undirected
    lines = [f"graph {_q(doc.name or 'gkm')} {{", "  node [shape=circle];"]
    for v in g.vertices:
        lines.append(f"  {_q(v)};")
    for j, eid in enumerate(g.edge_ids):
        a, b = g.ends[j]
        d = 2 * j
        if doc.orientation is not None and doc.orientation[d] < 0:
            a, b, d = b, a, d + 1
        attrs = [f"id={_q(eid)}"]
        if doc.labeling is not None:
            attrs.append(f"label={_q(list(doc.labeling[d]))}")
        if j in dotted:
            attrs.append("style=dotted")
        lines.append(f"  {_q(a)} -- {_q(b)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
