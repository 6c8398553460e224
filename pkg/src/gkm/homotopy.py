"""Orientations, Betti numbers, loop decomposition into conjugated 2-faces,
and H₁ of the complex obtained by gluing a disc into every 2-face.

An orientation is a tuple ``o`` indexed by directed edge with values ±1 and
``o[rev(d)] == -o[d]``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from . import lattice
from .graph import Graph, TwoFace, check_path, face_loop, rev, sort_key
from .labels import Labeling

__all__ = [
    "HypothesisError",
    "AbelianGroup",
    "ConjugatedFace",
    "ConjugatedFaceWord",
    "check_orientation",
    "orientation_from_heights",
    "moment_orientation",
    "reverse_orientation",
    "check_acyclic",
    "topological_heights",
    "vertex_index",
    "betti_numbers",
    "face_betti_numbers",
    "check_hamcase_hypotheses",
    "free_reduce",
    "inverse_word",
    "decompose_loop",
    "face_complex_h1",
]


class HypothesisError(ValueError):
    """The orientation or the faces do not satisfy the decomposition hypotheses."""


def check_orientation(graph: Graph, o: Sequence[int]) -> None:
    if len(o) != graph.num_directed:
        raise ValueError("orientation must assign a sign to every directed edge")
    for d in graph.directed_edges():
        if o[d] not in (1, -1) or o[rev(d)] != -o[d]:
            raise ValueError(f"orientation is not antisymmetric at {graph.name(d)}")


def orientation_from_heights(graph: Graph, heights: dict) -> tuple[int, ...]:
    """``o(e) = +1`` iff the height increases along ``e``."""
    out = []
    for d in graph.directed_edges():
        a, b = heights[graph.src(d)], heights[graph.dst(d)]
        if a == b:
            raise ValueError(f"equal heights along {graph.name(d)}")
        out.append(1 if b > a else -1)
    return tuple(out)


def moment_orientation(graph: Graph, labeling: Labeling, xi: Sequence[int]) -> tuple[int, ...]:
    """``o(e) = sign <α̃(e), ξ>``."""
    out = []
    for d in graph.directed_edges():
        s = sum(a * x for a, x in zip(labeling[d], xi))
        if s == 0:
            raise ValueError(f"ξ is orthogonal to the label of {graph.name(d)}")
        out.append(1 if s > 0 else -1)
    return tuple(out)


def reverse_orientation(o: Sequence[int]) -> tuple[int, ...]:
    return tuple(-s for s in o)


def check_acyclic(graph: Graph, o: Sequence[int]):
    """``(True, None)`` or ``(False, cycle)`` with the cycle as directed edges."""
    check_orientation(graph, o)
    color = {v: 0 for v in graph.vertices}
    via = {}
    for root in graph.vertices:
        if color[root]:
            continue
        stack = [(root, iter(d for d in graph.star(root) if o[d] > 0))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            d = next(it, None)
            if d is None:
                color[v] = 2
                stack.pop()
                continue
            w = graph.dst(d)
            if color[w] == 1:
                cycle = [d]
                x = v
                while x != w:
                    cycle.append(via[x])
                    x = graph.src(via[x])
                return False, tuple(reversed(cycle))
            if color[w] == 0:
                color[w] = 1
                via[w] = d
                stack.append((w, iter(e for e in graph.star(w) if o[e] > 0)))
    return True, None


def topological_heights(graph: Graph, o: Sequence[int]) -> dict:
    """Heights 1..N from a total order extending ``≤_o``.

    Kahn's algorithm, always taking the smallest available vertex id.
    """
    ok, cycle = check_acyclic(graph, o)
    if not ok:
        raise HypothesisError("orientation has a cycle: " + " ".join(graph.name(d) for d in cycle))
    indeg = {v: sum(1 for d in graph.star(v) if o[d] < 0) for v in graph.vertices}
    heap = [(sort_key(v), v) for v, k in indeg.items() if k == 0]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, v = heapq.heappop(heap)
        out[v] = len(out) + 1
        for d in graph.star(v):
            if o[d] > 0:
                w = graph.dst(d)
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, (sort_key(w), w))
    return out


def vertex_index(graph: Graph, o: Sequence[int], v, edges=None) -> int:
    """Number of edges of ``str v`` (restricted to ``edges``) with ``o = -1``."""
    return sum(1 for d in graph.star(v) if o[d] < 0 and (edges is None or d in edges))


def betti_numbers(graph: Graph, o: Sequence[int], vertices=None, edges=None) -> list[int]:
    """``[b_0, b_2, ..., b_2n]`` of the subgraph spanned by ``vertices`` and ``edges``.

    ``edges`` is a set of directed edges closed under reversal; by default
    the full graph.  ``b_2i`` counts vertices of index ``i``.
    """
    vertices = graph.vertices if vertices is None else list(vertices)
    if edges is not None:
        edges = set(edges)
    vals = [sum(1 for d in graph.star(v) if edges is None or d in edges) for v in vertices]
    n = max(vals, default=0)
    out = [0] * (n + 1)
    for v in vertices:
        out[vertex_index(graph, o, v, edges)] += 1
    return out


def face_betti_numbers(graph: Graph, face: TwoFace, o: Sequence[int]) -> list[int]:
    """``[b_0, b_2, b_4]`` of a 2-face, counted per corner of its boundary.

    For a simple face the corners are exactly its vertices.
    """
    out = [0, 0, 0]
    for x, y in face.corners():
        out[(o[x] < 0) + (o[y] < 0)] += 1
    return out


def check_hamcase_hypotheses(graph: Graph, faces: Sequence[TwoFace], o: Sequence[int]) -> list[str]:
    """Problems preventing :func:`decompose_loop`; empty when it applies."""
    ok, cycle = check_acyclic(graph, o)
    if not ok:
        return ["orientation has a cycle: " + " ".join(graph.name(d) for d in cycle)]
    out = []
    for f in faces:
        b4 = face_betti_numbers(graph, f, o)[2]
        if b4 != 1:
            out.append(f"face {' '.join(graph.name(d) for d in f.boundary)} has b4 = {b4}")
    return out


# -- words ------------------------------------------------------------------------


def free_reduce(word: Sequence[int]) -> tuple[int, ...]:
    """Cancel adjacent ``e·ē`` pairs."""
    out: list[int] = []
    for d in word:
        if out and out[-1] == rev(d):
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(rev(d) for d in reversed(word))


@dataclass(frozen=True)
class ConjugatedFace:
    """``h · loop · h⁻¹`` where ``loop`` runs once around ``face``.

    ``direction`` is +1 when ``loop`` is a rotation of ``face.boundary`` and
    -1 when it is a rotation of the reversed boundary.
    """

    conjugator: tuple[int, ...]
    face: TwoFace
    loop: tuple[int, ...]
    direction: int

    def expand(self) -> tuple[int, ...]:
        return self.conjugator + self.loop + inverse_word(self.conjugator)


@dataclass(frozen=True)
class ConjugatedFaceWord:
    basepoint: object
    items: tuple[ConjugatedFace, ...]

    def __len__(self) -> int:
        return len(self.items)

    def expand(self) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for item in self.items:
            out += item.expand()
        return out


def _direction(face: TwoFace, loop: Sequence[int]) -> int:
    b = list(face.boundary)
    n = len(b)
    rots = {tuple(b[k:] + b[:k]) for k in range(n)}
    return 1 if tuple(loop) in rots else -1


def _face_containing(faces: Sequence[TwoFace], a: int, b: int) -> TwoFace:
    key = frozenset((a, b))
    for f in faces:
        if key in f.pairs:
            return f
    raise HypothesisError("edge pair lies on no listed face")


def _measure(word, heights, graph):
    if not word:
        return (0, 0)
    hs = [heights[graph.src(d)] for d in word]
    top = max(hs)
    return (top, hs.count(top))


def decompose_loop(
    graph: Graph,
    faces: Sequence[TwoFace],
    o: Sequence[int],
    loop: Sequence[int],
    basepoint=None,
) -> ConjugatedFaceWord:
    """Write a closed path as a product of conjugated 2-faces.

    The loop is first moved to the lowest vertex ``m`` by a connecting path
    ``τ``.  Repeatedly, the leftmost occurrence of the highest vertex ``v``
    (entered by ``x``, left by ``y``) is cut out: if ``C = x·y·P`` is the face
    loop through that corner, based at ``i(x)``, then
    ``h₁·x·y·h₃ = (h₁·C·h₁⁻¹)·(h₁·P⁻¹·h₃)``.  Since ``v`` is the only local
    maximum of that face, the pair (height of the top vertex, its number of
    occurrences) drops at each step.  All rewriting happens in the free
    group on the edges, so the expanded result reduces to the reduced input.
    """
    loop = tuple(graph.edge(d) for d in loop)
    if basepoint is None:
        basepoint = graph.vertices[0]
    problems = check_hamcase_hypotheses(graph, faces, o)
    if problems:
        raise HypothesisError("; ".join(problems))
    if loop:
        start, end = check_path(graph, loop)
        if start != basepoint or end != basepoint:
            raise ValueError("loop is not closed at the basepoint")
    heights = topological_heights(graph, o)
    low = min(graph.vertices, key=lambda v: heights[v])
    tau = _path(graph, basepoint, low)

    word = free_reduce(inverse_word(tau) + loop + tau)
    items = []
    measure = _measure(word, heights, graph)
    while word:
        hs = [heights[graph.dst(d)] for d in word[:-1]]
        k = max(range(len(hs)), key=lambda i: (hs[i], -i))
        x, y = word[k], word[k + 1]
        face = _face_containing(faces, y, rev(x))
        around = face_loop(graph, y, rev(x))  # y · P · x
        p = tuple(around[1:-1])
        c = (x, y) + p
        h1, h3 = word[:k], word[k + 2 :]
        items.append(ConjugatedFace(tau + h1, face, c, _direction(face, c)))
        word = free_reduce(h1 + inverse_word(p) + h3)
        new = _measure(word, heights, graph)
        if new >= measure:
            raise HypothesisError(
                f"induction measure did not drop at {graph.dst(x)!r}: {measure} -> {new}"
            )
        measure = new
    return ConjugatedFaceWord(basepoint, tuple(items))


def _path(graph: Graph, a, b) -> tuple[int, ...]:
    from .monodromy import bfs_tree

    tree = bfs_tree(graph, a)
    if b not in tree:
        raise ValueError("graph is not connected")
    return tree[b]


# -- homology ----------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank ⊕ Z/t₁ ⊕ ...`` with ``t₁ | t₂ | ...``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def boundary_matrices(graph: Graph, faces: Sequence[TwoFace]):
    """``(∂₁, ∂₂)`` with columns indexed by edges and faces respectively."""
    nv, ne = len(graph.vertices), len(graph.edge_ids)
    vpos = {v: i for i, v in enumerate(graph.vertices)}
    d1 = [[0] * ne for _ in range(nv)]
    for j, (a, b) in enumerate(graph.ends):
        d1[vpos[a]][j] -= 1
        d1[vpos[b]][j] += 1
    d2 = [[0] * len(faces) for _ in range(ne)]
    for k, f in enumerate(faces):
        for d in f.boundary:
            d2[d >> 1][k] += -1 if d & 1 else 1
    return lattice.as_int_matrix(d1, cols=ne), lattice.as_int_matrix(d2, cols=len(faces))


def face_complex_h1(graph: Graph, faces: Sequence[TwoFace]) -> AbelianGroup:
    """H₁ of the graph with a disc glued along each face boundary."""
    d1, d2 = boundary_matrices(graph, faces)
    ne = len(graph.edge_ids)
    cycles = ne - lattice.rank(d1)
    factors = lattice.invariant_factors(d2) if faces else []
    return AbelianGroup(cycles - len(factors), tuple(t for t in factors if t > 1))
