"""Builders for the example GKM graphs, and access to the bundled JSON files."""
from __future__ import annotations

from importlib import resources
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import lattice
from .graph import Graph
from .homotopy import moment_orientation, orientation_from_heights
from .io import GraphDocument, parse_graph_document
from .labels import Labeling

__all__ = [
    "s6_signed",
    "s6_unsigned",
    "fl3",
    "FL3_COORDINATES",
    "FL3_FACES",
    "connection_from_faces",
    "toric_graph",
    "cp",
    "bott_cube",
    "cube",
    "project",
    "generic_projection",
    "orientation_from_heights",
    "moment_orientation",
    "bundled_names",
    "load_bundled",
    "bundled_path",
]


# -- S^6 ----------------------------------------------------------------------

_S6_LABELS = {"e1": (1, 0), "e2": (0, 1), "e3": (-1, -1)}


def s6_signed() -> GraphDocument:
    """Two vertices, three edges, labels summing to zero; ∇ swaps the other two edges."""
    g = Graph(["u", "v"], [(e, "u", "v") for e in _S6_LABELS])
    conn = {}
    others = {"e1": ("e2", "e3"), "e2": ("e1", "e3"), "e3": ("e1", "e2")}
    for e, (a, b) in others.items():
        conn[e + "+"] = {e + "+": e + "-", a + "+": b + "-", b + "+": a + "-"}
        conn[e + "-"] = {e + "-": e + "+", a + "-": b + "+", b + "-": a + "+"}
    g = Graph(g.vertices, [(e, "u", "v") for e in _S6_LABELS], conn)
    lab = Labeling.from_edges(g, _S6_LABELS, signed=True)
    o = tuple(1 if d % 2 == 0 else -1 for d in g.directed_edges())
    return GraphDocument(g, lab, "S6 signed", o)


def s6_unsigned() -> GraphDocument:
    """Same underlying graph with the self-connection ``∇_e e' = ē'``."""
    conn = {}
    for e in _S6_LABELS:
        conn[e + "+"] = {x + "+": x + "-" for x in _S6_LABELS}
        conn[e + "-"] = {x + "-": x + "+" for x in _S6_LABELS}
    g = Graph(["u", "v"], [(e, "u", "v") for e in _S6_LABELS], conn)
    lab = Labeling.from_edges(g, _S6_LABELS, signed=False)
    o = tuple(1 if d % 2 == 0 else -1 for d in g.directed_edges())
    return GraphDocument(g, lab, "S6 unsigned", o)


# -- Fl_3 ---------------------------------------------------------------------

# Planar coordinates of the six fixed points (one-line notation), laid out as
# a distorted hexagon with three chords; edge directions are positive
# multiples of T(label) with T = diag(1, -1).
FL3_COORDINATES = {
    "213": (1, 1),
    "123": (-2, 1),
    "321": (2, -3),
    "231": (2, 0),
    "132": (-2, 0),
    "312": (1, -3),
}

# Labels in the root basis a = x1 - x2, b = x2 - x3.
_FL3_EDGES = [
    ("123-132", "123", "132", (0, 1)),
    ("123-213", "123", "213", (1, 0)),
    ("123-321", "123", "321", (1, 1)),
    ("132-231", "132", "231", (1, 0)),
    ("132-312", "132", "312", (1, 1)),
    ("213-231", "213", "231", (1, 1)),
    ("213-312", "213", "312", (0, 1)),
    ("231-321", "231", "321", (0, 1)),
    ("312-321", "312", "321", (1, 0)),
]


# The 2-faces as vertex cycles: the hexagon of the planar picture and one
# square for each pair of chords.
FL3_FACES = [
    ("213", "123", "321", "231", "132", "312"),
    ("213", "123", "132", "231"),
    ("123", "132", "312", "321"),
    ("213", "231", "321", "312"),
]


def connection_from_faces(graph: Graph, faces) -> list[dict]:
    """The connection whose 2-faces are the given vertex cycles.

    Every pair of edges at a vertex must lie on exactly one cycle; along a
    cycle ``∇_x`` sends the previous edge (reversed) to the next one.
    """
    by_ends = {}
    for d in graph.directed_edges():
        by_ends.setdefault((graph.src(d), graph.dst(d)), []).append(d)
    nabla = [{d: d ^ 1} for d in graph.directed_edges()]
    for cyc in faces:
        n = len(cyc)
        for seq in (list(cyc), list(reversed(cyc))):
            steps = []
            for k in range(n):
                ds = by_ends.get((seq[k], seq[(k + 1) % n]), [])
                if len(ds) != 1:
                    raise ValueError(f"face {cyc} needs exactly one edge {seq[k]}-{seq[(k + 1) % n]}")
                steps.append(ds[0])
            for k in range(n):
                x, prev, nxt = steps[k], steps[k - 1], steps[(k + 1) % n]
                if prev ^ 1 in nabla[x]:
                    raise ValueError(f"pair at {seq[k]} lies on two faces")
                nabla[x][prev ^ 1] = nxt
    return nabla


def fl3() -> GraphDocument:
    g = Graph(list(FL3_COORDINATES), [(e, a, b) for e, a, b, _ in _FL3_EDGES])
    lab = Labeling.from_edges(g, {e: v for e, _, _, v in _FL3_EDGES}, signed=True)
    g = g.with_connection(connection_from_faces(g, FL3_FACES))
    heights = {v: 10 * y + x for v, (x, y) in FL3_COORDINATES.items()}
    o = orientation_from_heights(g, heights)
    return GraphDocument(g, lab, "Fl3", o)


# -- toric graphs from smooth complete fans -------------------------------------


def toric_graph(
    rays: Sequence[Sequence[int]],
    cones: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    xi: Sequence[int] | None = None,
    name: str = "",
) -> GraphDocument:
    """Torus graph of a smooth complete fan.

    Vertices are the maximal cones; two cones sharing all rays but one are
    joined.  At cone σ the edge dropping ray r is labelled by the dual basis
    vector w_r (``<w_r, u_r> = 1``, zero on the other rays of σ), and the
    connection matches edges that drop the same ray.
    """
    n = len(rays[0])
    cones = [tuple(sorted(c)) for c in cones]
    names = list(names) if names is not None else [f"v{k}" for k in range(len(cones))]
    dual = {}
    for c in cones:
        m = lattice.as_int_matrix([rays[r] for r in c])
        if not lattice.is_unimodular(m):
            raise ValueError(f"cone {c} is not smooth")
        inv = lattice.rational_solve(m.T, lattice.identity(n))
        # rows of inv: x with x @ m.T = e_k, i.e. <x, u_{c[k]}> = δ
        for k, r in enumerate(c):
            dual[(c, r)] = tuple(int(x) for x in inv[k])
    edges, labels, drop = [], {}, {}
    for i, j in combinations(range(len(cones)), 2):
        a, b = set(cones[i]), set(cones[j])
        if len(a & b) != n - 1:
            continue
        (r,) = a - b
        eid = f"{names[i]}-{names[j]}"
        edges.append((eid, names[i], names[j]))
        labels[eid] = dual[(cones[i], r)]
        (r2,) = b - a
        drop[eid] = (r, r2)
    g = Graph(names, edges)
    cone_of = dict(zip(names, cones))

    def dropped(d):
        r, r2 = drop[g.edge_ids[d >> 1]]
        return r if d % 2 == 0 else r2

    nabla = []
    for d in g.directed_edges():
        kept = {dropped(f): f for f in g.star(g.dst(d))}
        m = {}
        for e in g.star(g.src(d)):
            r = dropped(e)
            m[e] = d ^ 1 if e == d else kept[r]
        nabla.append(m)
    g = g.with_connection(nabla)
    lab = Labeling.from_edges(g, labels, signed=True)
    o = None
    if xi is not None:
        o = moment_orientation(g, lab, xi)
    del cone_of
    return GraphDocument(g, lab, name, o)


def _generic_xi(n: int) -> tuple[int, ...]:
    return tuple(1 + 7 * k + k * k for k in range(n))


def cp(n: int) -> GraphDocument:
    """CP^n: rays e_1..e_n and -(e_1+...+e_n); vertex p_i omits ray i."""
    rays = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [tuple(r for r in range(n + 1) if r != i) for i in range(n + 1)]
    names = [f"p{(i + 1) % (n + 1)}" for i in range(n + 1)]
    return toric_graph(rays, cones, names, xi=_generic_xi(n), name=f"CP{n}")


def bott_cube(twists: Sequence[Sequence[int]], name: str = "") -> GraphDocument:
    """Bott tower of dimension n: rays e_i and v_i = -e_i + Σ_{j>i} a_ij e_j.

    ``twists[i]`` lists a_ij for j > i.  Vertices are named by 0/1 strings
    (1 = use v_i).  The graph is an n-cube.
    """
    n = len(twists) + 1
    rays = []
    for i in range(n):
        rays.append(tuple(int(k == i) for k in range(n)))
    for i in range(n):
        v = [-int(k == i) for k in range(n)]
        for off, a in enumerate(twists[i] if i < len(twists) else ()):
            v[i + 1 + off] += a
        rays.append(tuple(v))
    cones, names = [], []
    for bits in product((0, 1), repeat=n):
        cones.append(tuple(i + n * b for i, b in enumerate(bits)))
        names.append("".join(map(str, bits)))
    return toric_graph(rays, cones, names, xi=_generic_xi(n), name=name or f"Bott{n}")


def cube(n: int = 3) -> GraphDocument:
    """Untwisted n-cube, the torus graph of (CP^1)^n."""
    return bott_cube([[0] * (n - 1 - i) for i in range(n - 1)], name=f"cube{n}")


# -- projections ----------------------------------------------------------------


def project(doc: GraphDocument, p, name: str = "") -> GraphDocument:
    """Relabel by ``α ↦ p·α`` for an integer matrix ``p``; graph and connection are kept."""
    p = lattice.as_int_matrix(p)
    lift = [tuple(int(x) for x in p @ np.array(v, dtype=object)) for v in doc.labeling.lift]
    lab = Labeling(p.shape[0], lift, doc.labeling.signed)
    return GraphDocument(doc.graph, lab, name or f"{doc.name} projected", doc.orientation, dict(doc.loops))


def generic_projection(doc: GraphDocument, q: int, search: int = 6):
    """A matrix ``[I | v]`` onto Z^(k-1) keeping ``q``-independence, or None.

    Candidates ``v`` are tried in a fixed order of increasing size.
    """
    from .labels import check_gkm_q

    k = doc.labeling.rank
    rng = range(-search, search + 1)
    cands = sorted(product(rng, repeat=k - 1), key=lambda v: (sum(abs(x) for x in v), v))
    for v in cands:
        p = [[int(i == j) for j in range(k - 1)] + [v[i]] for i in range(k - 1)]
        proj = project(doc, p)
        if q <= k - 1 and check_gkm_q(doc.graph, proj.labeling, q)[0]:
            return lattice.as_int_matrix(p)
    return None


# -- bundled files ----------------------------------------------------------------


def bundled_names() -> list[str]:
    files = resources.files("gkm").joinpath("data")
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def bundled_path(name: str):
    return resources.files("gkm").joinpath("data", name + ".json")


def load_bundled(name: str) -> GraphDocument:
    return parse_graph_document(bundled_path(name).read_text(), name + ".json")


# -- the bundled corpus ----------------------------------------------------------

BOTT3_TWISTS = [[1, -1], [2]]


def _with_loops(doc: GraphDocument, pairs: dict) -> GraphDocument:
    from .graph import face_loop

    g = doc.graph
    for name, seq in pairs.items():
        word = ()
        for a, b in seq:
            word += tuple(face_loop(g, g.edge(a), g.edge(b)))
        doc.loops[name] = word
    return doc


def corpus_documents() -> dict[str, GraphDocument]:
    """Every bundled graph, rebuilt from the constructions in this module."""
    docs = {
        "s6_signed": s6_signed(),
        "s6_unsigned": s6_unsigned(),
        "fl3": fl3(),
        "cp1": cp(1),
        "cp2": cp(2),
        "cp3": cp(3),
        "cube3": cube(3),
        "bott3": bott_cube(BOTT3_TWISTS, name="Bott tower 3"),
        "cp5": cp(5),
        "cube5": cube(5),
    }
    g = docs["cp2"].graph
    _with_loops(docs["cp2"], {"triangle": [(g.star(g.vertices[0])[0], g.star(g.vertices[0])[1])]})
    for key in ("cube3", "bott3"):
        g = docs[key].graph
        s = g.star(g.vertices[0])
        _with_loops(docs[key], {"face": [(s[0], s[1])], "two_faces": [(s[0], s[1]), (s[1], s[2])]})
    docs["s6_unsigned"].loops["backtrack"] = (0, 1)
    for base, q in (("cp3", 2), ("bott3", 2), ("cp5", 4), ("cube5", 4)):
        p = generic_projection(docs[base], q)
        docs[f"{base}_projected"] = project(docs[base], p, f"{docs[base].name} projected to rank {p.shape[0]}")
    return docs


def cover_documents(docs: dict[str, GraphDocument] | None = None):
    """Bundled covers: the Fl_3 double cover, trivial over every 2-face."""
    from .covers import covering_to_document, face_trivial_voltage, voltage_cover

    docs = corpus_documents() if docs is None else docs
    base = docs["fl3"]
    volt = face_trivial_voltage(base.graph, 2)
    cov = voltage_cover(base.graph, base.labeling, 2, volt)
    return {"fl3_double_cover": covering_to_document(cov, base, "Fl3 double cover", "../fl3.json")}


def write_bundled(directory) -> list:
    """Regenerate the JSON corpus into ``directory``."""
    from pathlib import Path

    from .io import serialize_cover_document, serialize_graph_document

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    docs = corpus_documents()
    written = []
    for name, doc in docs.items():
        path = directory / f"{name}.json"
        path.write_text(serialize_graph_document(doc))
        written.append(path)
    for name, doc in cover_documents(docs).items():
        path = directory / "covers" / f"{name}.json"
        path.parent.mkdir(exist_ok=True)
        path.write_text(serialize_cover_document(doc))
        written.append(path)
    return written


def bundled_cover_path(name: str):
    return resources.files("gkm").joinpath("data", "covers", name + ".json")


if __name__ == "__main__":
    import sys

    for p in write_bundled(sys.argv[1] if len(sys.argv) > 1 else resources.files("gkm").joinpath("data")):
        print(p)
