"""Finite GKM coverings: validation, lifting, deck action, pullback and the
comparison of the pullback image with the deck invariants of A(Γ̃)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from . import lattice
from .graph import Graph, TwoFace, enumerate_2faces, rev
from .io import CoverDocument, GraphDocument
from .labels import Labeling, derive_eps_c
from .monodromy import ambient_index, axial_group, axial_group_full, pi1_generators

__all__ = [
    "CoveringError",
    "GraphCovering",
    "PbimResult",
    "deck_closure",
    "deck_edge_map",
    "lift_path",
    "face_lift_witnesses",
    "validate_covering",
    "lift_gkm_structure",
    "deck_matrix",
    "deck_action_on_axial",
    "pullback",
    "check_pbim",
    "identity_cover",
    "trivial_cover",
    "voltage_cover",
    "face_trivial_voltage",
    "covering_from_document",
    "covering_to_document",
]

DECK_ORDER_BOUND = 64


class CoveringError(ValueError):
    pass


@dataclass
class GraphCovering:
    """Projection ``total → base`` on vertices and directed edges, plus deck generators.

    ``edge_map[d]`` is the base directed edge under the total directed edge
    ``d``; deck generators are permutations of the total vertices.
    """

    total: Graph
    base: Graph
    base_labeling: Labeling
    vertex_map: dict
    edge_map: tuple[int, ...]
    deck_generators: list[dict]
    total_labeling: Labeling | None = None

    def fiber(self, b) -> list:
        return [v for v in self.total.vertices if self.vertex_map[v] == b]


def _perm_key(p: dict, vertices) -> tuple:
    return tuple(p[v] for v in vertices)


def deck_closure(gens: Sequence[dict], vertices: Sequence, bound: int = DECK_ORDER_BOUND) -> list[dict]:
    """All products of the generators; raises if more than ``bound`` elements appear."""
    vertices = list(vertices)
    ident = {v: v for v in vertices}
    seen = {_perm_key(ident, vertices): ident}
    todo = [ident]
    while todo:
        g = todo.pop()
        for h in gens:
            gh = {v: h[g[v]] for v in vertices}
            key = _perm_key(gh, vertices)
            if key not in seen:
                seen[key] = gh
                todo.append(gh)
                if len(seen) > bound:
                    raise CoveringError(f"deck group has more than {bound} elements")
    return [seen[k] for k in sorted(seen, key=lambda k: tuple(map(str, k)))]


def deck_edge_map(cov: GraphCovering, g: dict) -> list[int]:
    """Action of a vertex permutation on directed edges, via the projection."""
    t = cov.total
    out = []
    for d in t.directed_edges():
        hits = [e for e in t.star(g[t.src(d)]) if cov.edge_map[e] == cov.edge_map[d]]
        if len(hits) != 1 or t.dst(hits[0]) != g[t.dst(d)]:
            raise CoveringError(f"permutation does not lift along {t.name(d)}")
        out.append(hits[0])
    return out


def lift_path(cov: GraphCovering, word: Sequence[int], start) -> list[int]:
    t = cov.total
    v, out = start, []
    for d in word:
        hits = [e for e in t.star(v) if cov.edge_map[e] == d]
        if len(hits) != 1:
            raise CoveringError(f"no unique lift of {cov.base.name(d)} at {v!r}")
        out.append(hits[0])
        v = t.dst(hits[0])
    return out


def face_lift_witnesses(cov: GraphCovering, faces: Sequence[TwoFace] | None = None) -> list[tuple]:
    """``(face, start)`` for every lift of a base face boundary that does not close."""
    faces = enumerate_2faces(cov.base) if faces is None else faces
    out = []
    for f in faces:
        b = f.boundary
        for v in cov.fiber(cov.base.src(b[0])):
            path = lift_path(cov, b, v)
            if cov.total.dst(path[-1]) != v:
                out.append((f, v))
    return out


def validate_covering(cov: GraphCovering) -> list[str]:
    t, b = cov.total, cov.base
    out = []
    for v in t.vertices:
        if cov.vertex_map.get(v) not in b.vertices:
            out.append(f"vertex {v!r} has no base image")
    if out:
        return out
    for d in t.directed_edges():
        e = cov.edge_map[d]
        if cov.edge_map[rev(d)] != rev(e):
            out.append(f"projection does not commute with reversal at {t.name(d)}")
        if cov.vertex_map[t.src(d)] != b.src(e) or cov.vertex_map[t.dst(d)] != b.dst(e):
            out.append(f"edge {t.name(d)} does not lie over {b.name(e)}")
    for v in t.vertices:
        img = sorted(cov.edge_map[d] for d in t.star(v))
        if img != sorted(b.star(cov.vertex_map[v])):
            out.append(f"star of {v!r} does not map bijectively")
    if out:
        return out
    if cov.total_labeling is not None:
        for d in t.directed_edges():
            if cov.total_labeling[d] != cov.base_labeling[cov.edge_map[d]]:
                out.append(f"label of {t.name(d)} differs from its image")
                break
    if t.nabla is not None and b.nabla is not None:
        for d in t.directed_edges():
            for e in t.star(t.src(d)):
                if cov.edge_map[t.transport(d, e)] != b.transport(cov.edge_map[d], cov.edge_map[e]):
                    out.append(f"connection along {t.name(d)} does not cover the base connection")
                    break
    try:
        group = deck_closure(cov.deck_generators, t.vertices)
    except CoveringError as exc:
        return out + [str(exc)]
    for g in group:
        if any(cov.vertex_map[g[v]] != cov.vertex_map[v] for v in t.vertices):
            out.append("a deck transformation does not commute with the projection")
            break
        try:
            deck_edge_map(cov, g)
        except CoveringError as exc:
            out.append(str(exc))
            break
    for bv in b.vertices:
        fib = cov.fiber(bv)
        if not fib:
            out.append(f"empty fiber over {bv!r}")
            continue
        orbit = {g[fib[0]] for g in group}
        if orbit != set(fib) or len(group) != len(fib):
            out.append(f"deck group is not free and transitive on the fiber over {bv!r}")
    for f, v in face_lift_witnesses(cov):
        out.append(f"face {' '.join(b.name(d) for d in f.boundary)} does not lift to a closed loop at {v!r}")
    return out


def lift_gkm_structure(cov: GraphCovering) -> tuple[Graph, Labeling]:
    """Total graph with the lifted connection and the pulled-back labels."""
    bad = face_lift_witnesses(cov)
    if bad:
        f, v = bad[0]
        raise CoveringError(
            f"covering is not trivial over face {' '.join(cov.base.name(d) for d in f.boundary)} (at {v!r})"
        )
    t, b = cov.total, cov.base
    nabla = []
    for d in t.directed_edges():
        m = {}
        for e in t.star(t.src(d)):
            target = b.transport(cov.edge_map[d], cov.edge_map[e])
            (f,) = [x for x in t.star(t.dst(d)) if cov.edge_map[x] == target]
            m[e] = f
        nabla.append(m)
    lab = Labeling(
        cov.base_labeling.rank,
        [cov.base_labeling[cov.edge_map[d]] for d in t.directed_edges()],
        cov.base_labeling.signed,
    )
    return t.with_connection(nabla), lab


def _lifted(cov: GraphCovering) -> GraphCovering:
    if cov.total.nabla is not None and cov.total_labeling is not None:
        return cov
    g, lab = lift_gkm_structure(cov)
    return GraphCovering(g, cov.base, cov.base_labeling, cov.vertex_map, cov.edge_map, cov.deck_generators, lab)


def deck_matrix(cov: GraphCovering, g: dict) -> np.ndarray:
    """Permutation matrix of ``g`` on ``⊕_v Z·str v``."""
    t = cov.total
    off = ambient_index(t)
    emap = deck_edge_map(cov, g)
    size = sum(len(t.star(v)) for v in t.vertices)
    m = np.zeros((size, size), dtype=object)
    for d in t.directed_edges():
        e = emap[d]
        m[off[t.src(e)] + t.star_pos(e), off[t.src(d)] + t.star_pos(d)] = 1
    return m


def _to_vector(graph: Graph, f: dict) -> np.ndarray:
    return np.array([x for v in graph.vertices for x in f[v]], dtype=object)


def _from_vector(graph: Graph, x) -> dict:
    out, k = {}, 0
    for v in graph.vertices:
        n = len(graph.star(v))
        out[v] = tuple(int(t) for t in x[k : k + n])
        k += n
    return out


def deck_action_on_axial(cov: GraphCovering, g: dict, f: dict) -> dict:
    """``(g·f)_v = f_{g⁻¹v}``, moved to ``str v`` along ``g``."""
    group = deck_closure(cov.deck_generators, cov.total.vertices)
    key = _perm_key(g, cov.total.vertices)
    if key not in {_perm_key(h, cov.total.vertices) for h in group}:
        raise CoveringError("permutation is not in the deck group")
    y = deck_matrix(cov, g) @ _to_vector(cov.total, f)
    return _from_vector(cov.total, y)


def pullback(cov: GraphCovering, f: dict) -> dict:
    """``(π*f)_v = f_{π(v)}`` in the coordinates of ``str v``."""
    t, b = cov.total, cov.base
    out = {}
    for v in t.vertices:
        fv = f[cov.vertex_map[v]]
        out[v] = tuple(int(fv[b.star_pos(cov.edge_map[d])]) for d in t.star(v))
    return out


@dataclass
class PbimResult:
    equal: bool
    pullback_image: np.ndarray
    invariants: np.ndarray
    base_rank: int
    total_rank: int


def check_pbim(cov: GraphCovering) -> PbimResult:
    """Compare ``π*(A(Γ))`` with ``A(Γ̃)^D`` inside ``⊕_v Z·str v``."""
    cov = _lifted(cov)
    t = cov.total
    size = sum(len(t.star(v)) for v in t.vertices)
    A = axial_group(cov.base, cov.base_labeling)
    pulled = [_to_vector(t, pullback(cov, f)) for f in A.elements()]
    image = lattice.lattice_basis(pulled, cols=size)
    if image.shape[0] != A.rank:
        raise AssertionError("pullback is not injective")
    eps, c = derive_eps_c(t, cov.total_labeling)
    full = axial_group_full(t, eps, c)
    blocks = [(deck_matrix(cov, g) - lattice.identity(size)) @ full.T for g in cov.deck_generators]
    if blocks and full.shape[0]:
        ys = lattice.integer_kernel(np.vstack(blocks), cols=full.shape[0])
        inv = lattice.lattice_basis((ys.T @ full) if ys.shape[1] else [], cols=size)
    else:
        inv = lattice.lattice_basis(full, cols=size)
    return PbimResult(lattice.same_lattice(image, inv, cols=size), image, inv, A.rank, full.shape[0])


# -- builders --------------------------------------------------------------------


def voltage_cover(graph: Graph, labeling: Labeling, m: int, voltage: dict) -> GraphCovering:
    """Cyclic m-sheeted cover: edge ``e`` from ``(a, s)`` to ``(b, s + voltage[e])``.

    Total vertices are named ``f"{v}.{s}"``, edges ``f"{e}.{s}"``; the deck
    group is generated by the sheet shift.
    """
    name = lambda v, s: f"{v}.{s}"
    verts = [name(v, s) for v in graph.vertices for s in range(m)]
    edges = []
    for j, eid in enumerate(graph.edge_ids):
        a, b = graph.ends[j]
        k = voltage.get(eid, 0) % m
        for s in range(m):
            edges.append((f"{eid}.{s}", name(a, s), name(b, (s + k) % m)))
    total = Graph(verts, edges)
    vmap = {name(v, s): v for v in graph.vertices for s in range(m)}
    emap = []
    base_index = {eid: j for j, eid in enumerate(graph.edge_ids)}
    for d in total.directed_edges():
        eid = total.edge_ids[d >> 1].rsplit(".", 1)[0]
        emap.append(2 * base_index[eid] + (d & 1))
    shift = {name(v, s): name(v, (s + 1) % m) for v in graph.vertices for s in range(m)}
    cov = GraphCovering(total, graph, labeling, vmap, tuple(emap), [shift] if m > 1 else [])
    if graph.nabla is not None:
        cov = _lifted(cov) if not face_lift_witnesses(cov) else cov
    return cov


def trivial_cover(graph: Graph, labeling: Labeling, m: int) -> GraphCovering:
    """``m`` disjoint copies of the base."""
    return voltage_cover(graph, labeling, m, {})


def identity_cover(graph: Graph, labeling: Labeling) -> GraphCovering:
    emap = tuple(graph.directed_edges())
    return GraphCovering(graph, graph, labeling, {v: v for v in graph.vertices}, emap, [], labeling)


def face_trivial_voltage(graph: Graph, m: int, faces: Sequence[TwoFace] | None = None, limit: int = 4096):
    """First voltage (zero on a BFS tree) with every face sum ≡ 0 and some loop sum ≢ 0 mod m.

    Such a voltage gives a connected cover trivial over all 2-faces.
    Returns ``None`` if none exists within ``limit`` candidates.
    """
    faces = enumerate_2faces(graph) if faces is None else faces
    pres = pi1_generators(graph)
    free = [graph.edge_ids[d >> 1] for d in pres.non_tree_edges]

    def total(word, volt):
        return sum((-1 if d & 1 else 1) * volt.get(graph.edge_ids[d >> 1], 0) for d in word) % m

    for count, vals in enumerate(product(range(m), repeat=len(free))):
        if count >= limit:
            break
        volt = dict(zip(free, vals))
        if not any(vals):
            continue
        if all(total(f.boundary, volt) == 0 for f in faces):
            return volt
    return None


def covering_from_document(doc: CoverDocument) -> GraphCovering:
    t, b = doc.total.graph, doc.base.graph
    emap = []
    for d in t.directed_edges():
        e = b.edge(doc.edge_map[t.edge_ids[d >> 1]])
        emap.append(rev(e) if d & 1 else e)
    cov = GraphCovering(t, b, doc.base.labeling, dict(doc.vertex_map), tuple(emap), list(doc.deck_generators))
    if doc.total.labeling is not None:
        cov.total_labeling = doc.total.labeling
    return cov


def covering_to_document(cov: GraphCovering, base: GraphDocument, name: str = "", base_ref: str | None = None) -> CoverDocument:
    t = cov.total
    emap = {eid: cov.base.name(cov.edge_map[2 * j]) for j, eid in enumerate(t.edge_ids)}
    total = GraphDocument(t.with_connection(None), None)
    return CoverDocument(base, total, dict(cov.vertex_map), emap, list(cov.deck_generators), name, base_ref)
