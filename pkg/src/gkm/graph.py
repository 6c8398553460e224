"""Finite graphs with an edge involution, stars, connections and 2-faces.

Directed edges are integers.  Undirected edge number ``j`` (in sorted id
order) gives the directed edges ``2*j`` (forward) and ``2*j + 1`` (reverse),
so the involution is ``d ^ 1``.  Stars list their edges in increasing order,
and every matrix elsewhere in the package uses that ordering.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "TwoFace",
    "FaceTraversalError",
    "PathError",
    "rev",
    "sort_key",
    "validate_base",
    "check_path",
    "parallel_transport",
    "face_loop",
    "enumerate_2faces",
    "face_of_pair",
    "transversal_monodromy_trivial",
]


class PathError(ValueError):
    """Raised for a sequence of edges that is not a path."""


class FaceTraversalError(RuntimeError):
    """Raised when a connection path fails to close within the step bound."""


def rev(d: int) -> int:
    return d ^ 1


def sort_key(x):
    """Total order on mixed int/str ids: ints first, then strings."""
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


class Graph:
    """A finite multigraph without loops, optionally carrying a connection.

    ``edges`` is a sequence of ``(edge_id, tail, head)``; ``connection`` maps a
    directed edge name (``"a+"``, ``"a-"``) to a mapping between directed edge
    names.  Construction only checks that names resolve; the graph axioms are
    checked by :func:`validate_base`.
    """

    def __init__(
        self,
        vertices: Iterable[Hashable],
        edges: Iterable[tuple],
        connection: Mapping[str, Mapping[str, str]] | None = None,
    ):
        self.vertices = tuple(sorted(set(vertices), key=sort_key))
        edges = sorted(edges, key=lambda e: sort_key(e[0]))
        self.edge_ids = tuple(e[0] for e in edges)
        if len(set(self.edge_ids)) != len(self.edge_ids):
            raise ValueError("duplicate edge id")
        vset = set(self.vertices)
        for eid, a, b in edges:
            if a not in vset or b not in vset:
                raise ValueError(f"edge {eid!r} has an unknown endpoint")
        self.ends = tuple((a, b) for _, a, b in edges)
        self._src = []
        self._dst = []
        for a, b in self.ends:
            self._src += [a, b]
            self._dst += [b, a]
        self._index = {eid: j for j, eid in enumerate(self.edge_ids)}
        self._stars = {v: [] for v in self.vertices}
        for d, v in enumerate(self._src):
            self._stars[v].append(d)
        self._stars = {v: tuple(s) for v, s in self._stars.items()}
        self._pos = {}
        for v, s in self._stars.items():
            for k, d in enumerate(s):
                self._pos[d] = k
        self.nabla: tuple[dict[int, int], ...] | None = None
        if connection is not None:
            self.nabla = self._parse_connection(connection)

    # -- construction helpers -------------------------------------------------

    def _parse_connection(self, connection) -> tuple[dict[int, int], ...]:
        table = [dict() for _ in range(self.num_directed)]
        for name, mapping in connection.items():
            d = self.edge(name)
            table[d] = {self.edge(x): self.edge(y) for x, y in dict(mapping).items()}
        return tuple(table)

    def with_connection(self, nabla: Sequence[Mapping[int, int]] | None) -> "Graph":
        """Copy of this graph with the connection given on directed edge indices."""
        g = Graph.__new__(Graph)
        g.__dict__.update(self.__dict__)
        g.nabla = None if nabla is None else tuple(dict(m) for m in nabla)
        return g

    # -- naming ---------------------------------------------------------------

    @property
    def num_directed(self) -> int:
        return 2 * len(self.edge_ids)

    def directed_edges(self) -> range:
        return range(self.num_directed)

    def name(self, d: int) -> str:
        return f"{self.edge_ids[d >> 1]}{'-' if d & 1 else '+'}"

    def edge(self, name) -> int:
        """Directed edge index from a name like ``"a+"`` (or an index)."""
        if isinstance(name, int):
            return name
        name = str(name)
        if not name or name[-1] not in "+-":
            raise KeyError(f"bad directed edge name {name!r}")
        base = name[:-1]
        j = self._index.get(base)
        if j is None:
            try:
                j = self._index[int(base)]
            except (ValueError, KeyError):
                raise KeyError(f"unknown edge {base!r}") from None
        return 2 * j + (name[-1] == "-")

    # -- incidence ------------------------------------------------------------

    def src(self, d: int):
        return self._src[d]

    def dst(self, d: int):
        return self._dst[d]

    def star(self, v) -> tuple[int, ...]:
        return self._stars[v]

    def star_pos(self, d: int) -> int:
        """Position of ``d`` inside ``star(src(d))``."""
        return self._pos[d]

    @property
    def valency(self) -> int:
        sizes = {len(s) for s in self._stars.values()}
        return sizes.pop() if len(sizes) == 1 else -1

    def transport(self, d: int, e: int) -> int:
        """The connection ``∇_d`` applied to ``e ∈ str i(d)``."""
        if self.nabla is None:
            raise ValueError("graph has no connection")
        return self.nabla[d][e]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = deque(seen)
        while todo:
            v = todo.popleft()
            for d in self._stars[v]:
                w = self._dst[d]
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edge_ids)} edges)"


def validate_base(graph: Graph) -> list[str]:
    """List every violated graph or connection axiom; empty when all hold."""
    g = graph
    out: list[str] = []
    for d in g.directed_edges():
        if g.src(d) == g.dst(d):
            out.append(f"edge {g.name(d)} is a loop")
    sizes = {v: len(g.star(v)) for v in g.vertices}
    if len(set(sizes.values())) > 1:
        n = max(set(sizes.values()), key=list(sizes.values()).count)
        for v, s in sizes.items():
            if s != n:
                out.append(f"vertex {v!r} has valency {s}, expected {n}")
    if not g.is_connected():
        out.append("graph is not connected")
    if g.nabla is None:
        out.append("graph has no connection")
        return out
    for d in g.directed_edges():
        m = g.nabla[d]
        a, b = set(g.star(g.src(d))), set(g.star(g.dst(d)))
        if set(m) != a:
            out.append(f"connection along {g.name(d)} is not defined on all of str {g.src(d)!r}")
            continue
        if set(m.values()) != b or len(set(m.values())) != len(m):
            out.append(f"connection along {g.name(d)} is not a bijection onto str {g.dst(d)!r}")
            continue
        if m.get(d) != rev(d):
            out.append(f"connection along {g.name(d)} does not send the edge to its reverse")
        back = g.nabla[rev(d)]
        if any(back.get(y) != x for x, y in m.items()):
            out.append(f"connection along {g.name(rev(d))} is not inverse to {g.name(d)}")
    return out


def check_path(graph: Graph, edges: Sequence[int], start=None):
    """Validate consecutiveness; return ``(start, end)`` vertices."""
    edges = [graph.edge(e) for e in edges]
    if not edges:
        if start is None:
            raise PathError("empty path needs a start vertex")
        return start, start
    if start is not None and graph.src(edges[0]) != start:
        raise PathError(f"path does not start at {start!r}")
    for k in range(len(edges) - 1):
        if graph.dst(edges[k]) != graph.src(edges[k + 1]):
            raise PathError(
                f"edges {graph.name(edges[k])} and {graph.name(edges[k + 1])} are not consecutive"
            )
    return graph.src(edges[0]), graph.dst(edges[-1])


def parallel_transport(graph: Graph, edges: Sequence[int], start=None) -> dict[int, int]:
    """Composed connection bijection ``str i(path) -> str t(path)``."""
    edges = [graph.edge(e) for e in edges]
    v, _ = check_path(graph, edges, start)
    cur = {e: e for e in graph.star(v)}
    for d in edges:
        cur = {e: graph.transport(d, x) for e, x in cur.items()}
    return cur


@dataclass(frozen=True)
class TwoFace:
    """A closed connection path and the subgraph it sweeps out.

    ``boundary`` is the canonical rotation/reflection of the loop.
    ``pairs`` holds the unordered pairs of edges the loop uses at each of
    its corners; ``simple`` is false when an undirected edge repeats.
    """

    boundary: tuple[int, ...]
    pairs: frozenset
    simple: bool

    @property
    def length(self) -> int:
        return len(self.boundary)

    @property
    def undirected(self) -> frozenset:
        return frozenset(d >> 1 for d in self.boundary)

    @property
    def directed(self) -> frozenset:
        return frozenset(self.boundary) | frozenset(rev(d) for d in self.boundary)

    def vertices(self, graph: Graph) -> frozenset:
        return frozenset(graph.src(d) for d in self.boundary)

    def corners(self) -> list[tuple[int, int]]:
        """``(outgoing, companion)`` at each position of the boundary."""
        b = self.boundary
        return [(b[k], rev(b[k - 1])) for k in range(len(b))]


def _step_bound(graph: Graph, step_bound: int | None) -> int:
    if step_bound is not None:
        return step_bound
    env = os.environ.get("GKM_STEP_BOUND")
    if env:
        return int(env)
    return 2 * graph.num_directed ** 2


def face_loop(graph: Graph, e: int, e2: int, step_bound: int | None = None) -> list[int]:
    """Boundary of the connection path leaving along ``e`` with companion ``e2``.

    The loop starts with ``e`` and ends with the reverse of ``e2``.
    """
    e, e2 = graph.edge(e), graph.edge(e2)
    if graph.src(e) != graph.src(e2) or e == e2:
        raise ValueError("face needs two distinct edges at one vertex")
    bound = _step_bound(graph, step_bound)
    x, y = e, e2
    loop = []
    for _ in range(bound):
        loop.append(x)
        x, y = graph.transport(x, y), rev(x)
        if (x, y) == (e, e2):
            return loop
    raise FaceTraversalError(f"face through {graph.name(e)}, {graph.name(e2)} did not close")


def _canonical(loop: list[int]) -> tuple[int, ...]:
    n = len(loop)
    back = [rev(d) for d in reversed(loop)]
    best = None
    for seq in (loop, back):
        for k in range(n):
            cand = seq[k:] + seq[:k]
            key = (tuple(d >> 1 for d in cand), tuple(cand))
            if best is None or key < best[0]:
                best = (key, tuple(cand))
    return best[1]


def enumerate_2faces(graph: Graph, step_bound: int | None = None) -> list[TwoFace]:
    """All connection-path closures of edge pairs, deduplicated and sorted."""
    faces = {}
    covered = set()
    for v in graph.vertices:
        s = graph.star(v)
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                key = frozenset((s[i], s[j]))
                if key in covered:
                    continue
                loop = face_loop(graph, s[i], s[j], step_bound)
                pairs = frozenset(
                    frozenset((loop[k], rev(loop[k - 1]))) for k in range(len(loop))
                )
                covered |= pairs
                b = _canonical(loop)
                simple = len({d >> 1 for d in loop}) == len(loop)
                faces[b] = TwoFace(b, pairs, simple)
    return [faces[k] for k in sorted(faces, key=lambda b: (len(b), tuple(d >> 1 for d in b), b))]


def face_of_pair(faces: Sequence[TwoFace], e: int, e2: int) -> TwoFace:
    key = frozenset((e, e2))
    for f in faces:
        if key in f.pairs:
            return f
    raise KeyError("no face contains this pair")


def transversal_monodromy_trivial(graph: Graph, face: TwoFace) -> dict[tuple[int, int], bool]:
    """Whether the monodromy around ``face`` fixes each transversal edge.

    Keys are ``(position, edge)``: the boundary is based at the source of
    ``face.boundary[position]`` and ``edge`` ranges over the star there minus
    the two boundary edges at that corner.
    """
    b = list(face.boundary)
    out = {}
    for k, (x, y) in enumerate(face.corners()):
        loop = b[k:] + b[:k]
        pi = parallel_transport(graph, loop)
        for e in graph.star(graph.src(x)):
            if e not in (x, y):
                out[(k, e)] = pi[e] == e
    return out
