"""Reading and writing ``gkm-graph/1`` and ``gkm-cover/1`` JSON documents."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .graph import Graph
from .labels import ConnectionDerivationError, Labeling, derive_connection

__all__ = [
    "DocumentError",
    "GraphDocument",
    "CoverDocument",
    "parse_graph_document",
    "graph_document_from_dict",
    "graph_document_to_dict",
    "serialize_graph_document",
    "load_graph_document",
    "parse_cover_document",
    "load_cover_document",
    "serialize_cover_document",
    "orientation_from_table",
    "orientation_to_table",
]

GRAPH_FORMAT = "gkm-graph/1"
COVER_FORMAT = "gkm-cover/1"


class DocumentError(ValueError):
    """Malformed input; ``where`` locates the problem inside the document."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class GraphDocument:
    graph: Graph
    labeling: Labeling | None
    name: str = ""
    orientation: tuple[int, ...] | None = None
    loops: dict[str, tuple[int, ...]] = field(default_factory=dict)
    connection_derived: bool = False

    @property
    def signed(self) -> bool:
        return self.labeling is None or self.labeling.signed


def _load_json(text: str, source: str = "<string>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def _need(data: dict, key: str, where: str, kind=None):
    if not isinstance(data, dict) or key not in data:
        raise DocumentError(f"missing field {key!r}", where)
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"field {key!r} has the wrong type", where)
    return value


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def orientation_from_table(graph: Graph, table: dict, where: str = "orientation") -> tuple[int, ...]:
    """Per-directed-edge signs from ``{edge id: ±1}`` (sign of the forward edge)."""
    out = []
    keys = {str(k): v for k, v in table.items()}
    for eid in graph.edge_ids:
        s = keys.get(str(eid))
        if s not in (1, -1):
            raise DocumentError(f"edge {eid!r} needs orientation 1 or -1", where)
        out += [s, -s]
    return tuple(out)


def orientation_to_table(graph: Graph, o) -> dict:
    return {str(eid): int(o[2 * j]) for j, eid in enumerate(graph.edge_ids)}


def graph_document_from_dict(
    data: Any, source: str = "", require_labels: bool = True, derive: bool = True
) -> GraphDocument:
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object", source)
    fmt = data.get("format")
    if fmt != GRAPH_FORMAT:
        raise DocumentError(f"unknown format {fmt!r}", f"{source}format")
    vertices = _need(data, "vertices", source, list)
    for k, v in enumerate(vertices):
        if not (_is_int(v) or isinstance(v, str)):
            raise DocumentError("vertex ids must be strings or integers", f"{source}vertices[{k}]")
    if len(set(vertices)) != len(vertices):
        raise DocumentError("duplicate vertex id", f"{source}vertices")
    raw_edges = _need(data, "edges", source, list)
    rank = data.get("rank")
    mode = data.get("mode", "signed")
    if mode not in ("signed", "unsigned"):
        raise DocumentError(f"mode must be 'signed' or 'unsigned', not {mode!r}", f"{source}mode")
    if require_labels and not _is_int(rank):
        raise DocumentError("rank must be an integer", f"{source}rank")
    edges, vectors, seen = [], {}, set()
    for k, e in enumerate(raw_edges):
        where = f"{source}edges[{k}]"
        eid = _need(e, "id", where)
        if not (_is_int(eid) or isinstance(eid, str)):
            raise DocumentError("edge ids must be strings or integers", where)
        where = f"{source}edges[{k}] ({eid!r})"
        if eid in seen:
            raise DocumentError("duplicate edge id", where)
        seen.add(eid)
        ends = _need(e, "ends", where, list)
        if len(ends) != 2 or any(x not in vertices for x in ends):
            raise DocumentError("ends must name two known vertices", where)
        edges.append((eid, ends[0], ends[1]))
        if "label" in e or require_labels:
            label = _need(e, "label", where, list)
            if not all(_is_int(x) for x in label):
                raise DocumentError("label entries must be integers", where)
            if _is_int(rank) and len(label) != rank:
                raise DocumentError(f"label has length {len(label)}, expected rank {rank}", where)
            vectors[eid] = label
    graph = Graph(vertices, edges)
    labeling = None
    if vectors and len(vectors) == len(edges):
        labeling = Labeling.from_edges(graph, vectors, signed=(mode == "signed"))
        if _is_int(rank):
            labeling.rank = rank
    derived = False
    table = data.get("connection")
    if table is not None:
        graph = _parse_connection(graph, table, f"{source}connection")
    elif labeling is not None and derive:
        try:
            graph = derive_connection(graph, labeling)
        except ConnectionDerivationError as exc:
            raise DocumentError(f"no connection given and none can be derived ({exc})", f"{source}connection") from None
        derived = True
    orientation = None
    if data.get("orientation") is not None:
        orientation = orientation_from_table(graph, data["orientation"], f"{source}orientation")
    loops = {}
    for name, word in (data.get("loops") or {}).items():
        where = f"{source}loops.{name}"
        try:
            loops[name] = tuple(graph.edge(x) for x in word)
        except (KeyError, TypeError) as exc:
            raise DocumentError(str(exc), where) from None
    return GraphDocument(graph, labeling, str(data.get("name", "")), orientation, loops, derived)


def _parse_connection(graph: Graph, table, where: str) -> Graph:
    if not isinstance(table, dict):
        raise DocumentError("connection must be an object", where)
    nabla = [None] * graph.num_directed
    for key, pairs in table.items():
        try:
            d = graph.edge(key)
            nabla[d] = {graph.edge(a): graph.edge(b) for a, b in pairs}
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad entry ({exc})", f"{where}.{key}") from None
    missing = [graph.name(d) for d, m in enumerate(nabla) if m is None]
    if missing:
        raise DocumentError(f"connection table is missing {', '.join(missing)}", where)
    return graph.with_connection(nabla)


def parse_graph_document(text: str, source: str = "<string>", **kw) -> GraphDocument:
    return graph_document_from_dict(_load_json(text, source), **kw)


def load_graph_document(path, **kw) -> GraphDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(str(exc), str(path)) from None
    return parse_graph_document(text, str(path), **kw)


def graph_document_to_dict(doc: GraphDocument) -> dict:
    g = doc.graph
    out: dict[str, Any] = {"format": GRAPH_FORMAT}
    if doc.name:
        out["name"] = doc.name
    if doc.labeling is not None:
        out["mode"] = "signed" if doc.labeling.signed else "unsigned"
        out["rank"] = doc.labeling.rank
    out["vertices"] = list(g.vertices)
    edges = []
    for j, eid in enumerate(g.edge_ids):
        e = {"id": eid, "ends": list(g.ends[j])}
        if doc.labeling is not None:
            e["label"] = list(doc.labeling[2 * j])
        edges.append(e)
    out["edges"] = edges
    if g.nabla is not None:
        out["connection"] = {
            g.name(d): [[g.name(e), g.name(g.nabla[d][e])] for e in g.star(g.src(d))]
            for d in g.directed_edges()
        }
    if doc.orientation is not None:
        out["orientation"] = orientation_to_table(g, doc.orientation)
    if doc.loops:
        out["loops"] = {k: [g.name(d) for d in doc.loops[k]] for k in sorted(doc.loops)}
    return out


def _dumps_block(value, indent: str) -> str:
    """One JSON line per list item / object entry, compact below that."""
    compact = lambda x: json.dumps(x, separators=(", ", ": "), ensure_ascii=False)
    if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        inner = ",\n".join(indent + "  " + compact(x) for x in value)
        return "[\n" + inner + "\n" + indent + "]"
    if isinstance(value, dict) and value and all(isinstance(v, (list, dict)) for v in value.values()):
        inner = ",\n".join(f"{indent}  {compact(str(k))}: {compact(v)}" for k, v in value.items())
        return "{\n" + inner + "\n" + indent + "}"
    return compact(value)


def _dumps(data: dict, indent: str = "") -> str:
    lines = []
    for k, v in data.items():
        if isinstance(v, dict) and "format" in v:
            text = _dumps(v, indent + "  ").rstrip("\n")
        else:
            text = _dumps_block(v, indent + "  ")
        lines.append(f"{indent}  {json.dumps(k)}: {text}")
    return "{\n" + ",\n".join(lines) + "\n" + indent + "}\n"


def serialize_graph_document(doc: GraphDocument) -> str:
    return _dumps(graph_document_to_dict(doc))


# -- covers -----------------------------------------------------------------


@dataclass
class CoverDocument:
    base: GraphDocument
    total: GraphDocument
    vertex_map: dict
    edge_map: dict
    deck_generators: list[dict]
    name: str = ""
    base_ref: str | None = None


def parse_cover_document(text: str, source: str = "<string>", base_dir: Path | None = None) -> CoverDocument:
    data = _load_json(text, source)
    if not isinstance(data, dict) or data.get("format") != COVER_FORMAT:
        raise DocumentError(f"unknown format {data.get('format') if isinstance(data, dict) else None!r}", "format")
    base_raw = _need(data, "base", "")
    base_ref = None
    if isinstance(base_raw, str):
        base_ref = base_raw
        path = Path(base_raw)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        base = load_graph_document(path)
    else:
        base = graph_document_from_dict(base_raw, "base.")
    total = graph_document_from_dict(_need(data, "total", ""), "total.", require_labels=False, derive=False)
    proj = _need(data, "projection", "", dict)
    vmap = _need(proj, "vertices", "projection", dict)
    emap = _need(proj, "edges", "projection", dict)
    tg = total.graph
    vertex_map = {}
    for v in tg.vertices:
        key = str(v)
        if key not in {str(k) for k in vmap}:
            raise DocumentError(f"vertex {v!r} has no image", "projection.vertices")
        image = {str(k): x for k, x in vmap.items()}[key]
        if image not in base.graph.vertices:
            raise DocumentError(f"image {image!r} of {v!r} is not a base vertex", "projection.vertices")
        vertex_map[v] = image
    edge_map = {}
    emap_s = {str(k): x for k, x in emap.items()}
    for eid in tg.edge_ids:
        if str(eid) not in emap_s:
            raise DocumentError(f"edge {eid!r} has no image", "projection.edges")
        try:
            edge_map[eid] = base.graph.name(base.graph.edge(emap_s[str(eid)]))
        except KeyError as exc:
            raise DocumentError(str(exc), f"projection.edges.{eid}") from None
    deck = []
    for k, perm in enumerate(data.get("deck_generators", [])):
        ps = {str(a): b for a, b in perm.items()}
        if set(ps) != {str(v) for v in tg.vertices}:
            raise DocumentError("deck generator must permute all total vertices", f"deck_generators[{k}]")
        deck.append({v: ps[str(v)] for v in tg.vertices})
    return CoverDocument(base, total, vertex_map, edge_map, deck, str(data.get("name", "")), base_ref)


def load_cover_document(path) -> CoverDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(str(exc), str(path)) from None
    return parse_cover_document(text, str(path), base_dir=path.parent)


def serialize_cover_document(doc: CoverDocument) -> str:
    out: dict[str, Any] = {"format": COVER_FORMAT}
    if doc.name:
        out["name"] = doc.name
    out["base"] = doc.base_ref if doc.base_ref is not None else graph_document_to_dict(doc.base)
    total = graph_document_to_dict(GraphDocument(doc.total.graph.with_connection(None), None))
    out["total"] = total
    tg = doc.total.graph
    out["projection"] = {
        "vertices": {str(v): doc.vertex_map[v] for v in tg.vertices},
        "edges": {str(e): doc.edge_map[e] for e in tg.edge_ids},
    }
    out["deck_generators"] = [{str(v): p[v] for v in tg.vertices} for p in doc.deck_generators]
    return _dumps(out)

