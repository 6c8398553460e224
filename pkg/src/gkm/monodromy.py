"""Monodromy operators and the group of axial functions A(Γ).

An element of A(Γ) is a family of star vectors ``f_v`` with
``f_{t(e)} = φ_e(f_{i(e)})``.  Since the graph is connected such a family is
determined by its value at one vertex, so A(Γ) is computed as the sublattice
of ``Z·str u`` fixed by the monodromy of every generator of π₁(Γ, u).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import lattice
from .graph import Graph, check_path, rev, sort_key
from .labels import Labeling, derive_eps_c

__all__ = [
    "Pi1Presentation",
    "AxialGroup",
    "phi_edge",
    "phi_path",
    "bfs_tree",
    "pi1_generators",
    "axial_group",
    "axial_group_full",
    "ambient_index",
    "label_to_axial",
    "axial_to_label",
    "is_label_function",
    "is_axial_element",
    "lift_change_conjugator",
]


def phi_edge(graph: Graph, eps, c, d: int) -> np.ndarray:
    """Matrix of ``x ↦ ∇_d(ε(d)·x + <x, d>·c(d))``.

    Columns follow ``str i(d)``, rows follow ``str t(d)``.
    """
    d = graph.edge(d)
    src, dst = graph.star(graph.src(d)), graph.star(graph.dst(d))
    m = np.zeros((len(dst), len(src)), dtype=object)
    for col, e in enumerate(src):
        row = graph.star_pos(graph.transport(d, e))
        m[row, col] += eps[d][e]
        m[row, src.index(d)] += c[d][e]
    return m


def phi_path(graph: Graph, eps, c, edges: Sequence[int], start=None) -> np.ndarray:
    """``φ_{e_q} ∘ ... ∘ φ_{e_1}``; the identity for an empty path at ``start``."""
    edges = [graph.edge(e) for e in edges]
    v, _ = check_path(graph, edges, start)
    m = lattice.identity(len(graph.star(v)))
    for d in edges:
        m = phi_edge(graph, eps, c, d) @ m
    return m


def bfs_tree(graph: Graph, root) -> dict:
    """Tree paths from ``root``: ``{vertex: tuple of directed edges}``.

    Vertices are expanded in BFS order and edges in star order, so the tree
    is fixed by the sorted ids.
    """
    paths = {root: ()}
    todo = deque([root])
    while todo:
        v = todo.popleft()
        for d in graph.star(v):
            w = graph.dst(d)
            if w not in paths:
                paths[w] = paths[v] + (d,)
                todo.append(w)
    return paths


def _reverse(path) -> tuple[int, ...]:
    return tuple(rev(d) for d in reversed(path))


@dataclass(frozen=True)
class Pi1Presentation:
    """Spanning-tree generators of π₁(Γ, basepoint)."""

    basepoint: object
    tree: dict
    tree_edges: frozenset
    generators: tuple[tuple[int, ...], ...]
    non_tree_edges: tuple[int, ...] = field(default=())


def pi1_generators(graph: Graph, basepoint=None) -> Pi1Presentation:
    """One loop per undirected edge outside a BFS spanning tree."""
    if basepoint is None:
        basepoint = graph.vertices[0]
    tree = bfs_tree(graph, basepoint)
    if len(tree) != len(graph.vertices):
        raise ValueError("graph is not connected")
    tree_edges = frozenset(p[-1] >> 1 for p in tree.values() if p)
    gens, non_tree = [], []
    for j in range(len(graph.edge_ids)):
        if j in tree_edges:
            continue
        d = 2 * j
        gens.append(tree[graph.src(d)] + (d,) + _reverse(tree[graph.dst(d)]))
        non_tree.append(d)
    return Pi1Presentation(basepoint, tree, tree_edges, tuple(gens), tuple(non_tree))


@dataclass
class AxialGroup:
    """A(Γ) as a lattice in ``Z·str basepoint``.

    ``basis`` holds one basis vector per row, in Hermite normal form.
    """

    graph: Graph
    eps: list
    c: list
    presentation: Pi1Presentation
    basis: np.ndarray

    @property
    def basepoint(self):
        return self.presentation.basepoint

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def contains(self, x) -> bool:
        n = len(self.graph.star(self.basepoint))
        return lattice.contains(self.basis, [list(x)], cols=n)

    def element(self, x) -> dict:
        """Propagate a basepoint value along the tree to a full axial element."""
        x = np.array([int(t) for t in x], dtype=object)
        out = {}
        for v, path in self.presentation.tree.items():
            y = phi_path(self.graph, self.eps, self.c, path, start=self.basepoint) @ x
            out[v] = tuple(int(t) for t in y)
        return {v: out[v] for v in self.graph.vertices}

    def elements(self) -> list[dict]:
        return [self.element(row) for row in self.basis]

    def monodromy(self, g: int) -> np.ndarray:
        return phi_path(self.graph, self.eps, self.c, self.presentation.generators[g])


def axial_group(graph: Graph, labeling: Labeling, basepoint=None, eps_c=None) -> AxialGroup:
    """Basis of A(Γ) at the basepoint (least vertex id by default)."""
    eps, c = eps_c if eps_c is not None else derive_eps_c(graph, labeling)
    pres = pi1_generators(graph, basepoint)
    n = len(graph.star(pres.basepoint))
    blocks = [phi_path(graph, eps, c, g) - lattice.identity(n) for g in pres.generators]
    stacked = np.vstack(blocks) if blocks else np.empty((0, n), dtype=object)
    kernel = lattice.integer_kernel(stacked, cols=n)
    return AxialGroup(graph, eps, c, pres, lattice.as_int_matrix(kernel.T, cols=n))


def ambient_index(graph: Graph) -> dict:
    """Offsets of each vertex star inside ``⊕_v Z·str v`` (vertices sorted)."""
    out, k = {}, 0
    for v in graph.vertices:
        out[v] = k
        k += len(graph.star(v))
    return out


def axial_group_full(graph: Graph, eps, c) -> np.ndarray:
    """A(Γ) inside ``⊕_v Z·str v``, one basis vector per row.

    Solves ``f_{t(e)} = φ_e f_{i(e)}`` for every edge at once, so it also
    works for disconnected graphs.
    """
    off = ambient_index(graph)
    total = sum(len(graph.star(v)) for v in graph.vertices)
    rows = []
    for d in graph.directed_edges():
        a, b = graph.src(d), graph.dst(d)
        m = phi_edge(graph, eps, c, d)
        for r in range(m.shape[0]):
            row = [0] * total
            row[off[b] + r] += 1
            for col in range(m.shape[1]):
                row[off[a] + col] -= m[r, col]
            rows.append(row)
    kernel = lattice.integer_kernel(lattice.as_int_matrix(rows, cols=total), cols=total)
    return lattice.as_int_matrix(kernel.T, cols=total)


def label_to_axial(graph: Graph, a: Sequence[int]) -> dict:
    """``Φ(a)_v = Σ_{e ∈ str v} a(e)·e`` as tuples over the star order."""
    return {v: tuple(int(a[d]) for d in graph.star(v)) for v in graph.vertices}


def axial_to_label(graph: Graph, f: dict) -> tuple[int, ...]:
    """``Φ⁻¹(f)(e) = <f_{i(e)}, e>``."""
    return tuple(int(f[graph.src(d)][graph.star_pos(d)]) for d in graph.directed_edges())


def is_label_function(graph: Graph, eps, c, a: Sequence[int]) -> bool:
    for d in graph.directed_edges():
        for e in graph.star(graph.src(d)):
            if a[graph.transport(d, e)] != eps[d][e] * a[e] + c[d][e] * a[d]:
                return False
    return True


def is_axial_element(graph: Graph, eps, c, f: dict) -> bool:
    for d in graph.directed_edges():
        x = np.array(f[graph.src(d)], dtype=object)
        y = phi_edge(graph, eps, c, d) @ x
        if tuple(int(t) for t in y) != tuple(f[graph.dst(d)]):
            return False
    return True


def lift_change_conjugator(graph: Graph, lift1, lift2) -> dict:
    """Diagonal sign matrices ``F_v`` with ``lift2(e) = d(e)·lift1(e)`` on str v.

    They satisfy ``F_{t(e)} φ¹_e = φ²_e F_{i(e)}``.  Raises ``ValueError`` if
    the lifts are not equal up to sign edgewise.
    """
    l1 = lift1.lift if isinstance(lift1, Labeling) else lift1
    l2 = lift2.lift if isinstance(lift2, Labeling) else lift2
    sign = []
    for d in graph.directed_edges():
        a, b = tuple(l1[d]), tuple(l2[d])
        if b == a:
            sign.append(1)
        elif b == tuple(-x for x in a):
            sign.append(-1)
        else:
            raise ValueError(f"lifts of {graph.name(d)} differ by more than a sign")
    out = {}
    for v in graph.vertices:
        s = graph.star(v)
        m = np.zeros((len(s), len(s)), dtype=object)
        for k, d in enumerate(s):
            m[k, k] = sign[d]
        out[v] = m
    return out
