"""Axial labelings, their sign and invariant functions, and GKM axiom checks."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from . import lattice
from .graph import Graph, rev, validate_base

__all__ = [
    "NotCompatibleError",
    "ConnectionDerivationError",
    "StarVector",
    "Labeling",
    "derive_eps_c",
    "check_sign_function",
    "check_invariant_function",
    "check_gkm_q",
    "gkm_degree",
    "check_effective",
    "derive_connection",
    "validate_gkm",
]


class NotCompatibleError(ValueError):
    """The labeling does not satisfy the congruence along the connection."""


class ConnectionDerivationError(ValueError):
    """No unique connection is compatible with the labeling."""


@dataclass(frozen=True)
class StarVector:
    """An element of Z·str v, stored as ``{directed edge: coefficient}``."""

    vertex: object
    coeffs: Mapping[int, int]

    def __getitem__(self, e: int) -> int:
        return self.coeffs[e]

    def to_array(self, graph: Graph) -> np.ndarray:
        return np.array([self.coeffs[e] for e in graph.star(self.vertex)], dtype=object)

    @classmethod
    def from_array(cls, graph: Graph, v, values) -> "StarVector":
        return cls(v, {e: int(x) for e, x in zip(graph.star(v), values)})


class Labeling:
    """A lift ``Ẽ -> Z^k`` with ``lift[rev(d)] == -lift[d]``.

    ``signed`` records whether the labeling is meant as a signed axial
    function; unsigned labelings keep this lift as a fixed representative.
    """

    def __init__(self, rank: int, lift: Sequence[Sequence[int]], signed: bool = True):
        self.rank = int(rank)
        self.lift = tuple(tuple(int(x) for x in v) for v in lift)
        self.signed = bool(signed)
        if any(len(v) != self.rank for v in self.lift):
            raise ValueError("label vector of the wrong length")

    @classmethod
    def from_edges(cls, graph: Graph, vectors: Mapping, signed: bool = True) -> "Labeling":
        """Build from forward vectors keyed by undirected edge id."""
        lift = []
        rank = None
        for eid in graph.edge_ids:
            v = tuple(int(x) for x in vectors[eid])
            rank = len(v) if rank is None else rank
            lift += [v, tuple(-x for x in v)]
        return cls(rank or 0, lift, signed)

    def __getitem__(self, d: int) -> tuple[int, ...]:
        return self.lift[d]

    def forward(self, graph: Graph) -> dict:
        return {eid: self.lift[2 * j] for j, eid in enumerate(graph.edge_ids)}

    def with_lift(self, lift, signed: bool | None = None) -> "Labeling":
        return Labeling(len(lift[0]) if lift else self.rank, lift, self.signed if signed is None else signed)

    def component(self, i: int) -> tuple[int, ...]:
        """The ``i``-th coordinate as a function on directed edges."""
        return tuple(v[i] for v in self.lift)

    def matrix(self) -> np.ndarray:
        """All forward label vectors as rows."""
        return lattice.as_int_matrix(self.lift[0::2], cols=self.rank)


def _solve_congruence(target, base, along):
    """Return ``(s, m)`` with ``target == s*base + m*along``, s = ±1, or None."""
    hits = []
    for s in (1, -1):
        r = [t - s * b for t, b in zip(target, base)]
        k = next(i for i, a in enumerate(along) if a != 0)
        if r[k] % along[k]:
            continue
        m = r[k] // along[k]
        if all(ri == m * ai for ri, ai in zip(r, along)):
            hits.append((s, m))
    return hits


def derive_eps_c(graph: Graph, labeling: Labeling):
    """Sign function ε and invariant function c determined by the lift.

    Returns two lists indexed by directed edge, each entry a
    :class:`StarVector` at the source.  Raises :class:`NotCompatibleError`
    when some pair of edges has no solution.
    """
    lab = labeling.lift
    eps, c = [], []
    for d in graph.directed_edges():
        if not any(lab[d]):
            raise NotCompatibleError(f"edge {graph.name(d)} has zero label")
        v = graph.src(d)
        ev, cv = {}, {}
        for e in graph.star(v):
            if e == d:
                ev[e], cv[e] = 1, -2
                continue
            hits = _solve_congruence(lab[graph.transport(d, e)], lab[e], lab[d])
            if len(hits) != 1:
                raise NotCompatibleError(
                    f"labels along {graph.name(d)} are not compatible at {graph.name(e)}"
                )
            ev[e], cv[e] = hits[0]
        if lab[rev(d)] != tuple(-x for x in lab[d]):
            raise NotCompatibleError(f"lift of {graph.name(rev(d))} is not the negative of {graph.name(d)}")
        eps.append(StarVector(v, ev))
        c.append(StarVector(v, cv))
    return eps, c


def check_sign_function(graph: Graph, eps) -> list[str]:
    out = []
    for d in graph.directed_edges():
        if eps[d][d] != 1:
            out.append(f"<eps({graph.name(d)}), {graph.name(d)}> != 1")
        if any(x not in (1, -1) for x in eps[d].coeffs.values()):
            out.append(f"eps({graph.name(d)}) has an entry outside ±1")
        back = eps[rev(d)]
        if any(back[graph.transport(d, e)] != s for e, s in eps[d].coeffs.items()):
            out.append(f"∇ eps({graph.name(d)}) != eps({graph.name(rev(d))})")
    return out


def check_invariant_function(graph: Graph, eps, c) -> list[str]:
    out = []
    for d in graph.directed_edges():
        if c[d][d] != -2:
            out.append(f"<c({graph.name(d)}), {graph.name(d)}> != -2")
        r = rev(d)
        for e, x in c[d].coeffs.items():
            f = graph.transport(d, e)
            if eps[r][f] * c[r][f] != x:
                out.append(f"∇ c({graph.name(d)}) != eps·c at {graph.name(f)}")
                break
    return out


def check_gkm_q(graph: Graph, labeling: Labeling, q: int):
    """``(True, None)`` if every q labels at a vertex are independent.

    Otherwise ``(False, (vertex, edges))`` for the first dependent subset.
    Raises ``ValueError`` when ``q`` exceeds the valency.
    """
    n = max(len(graph.star(v)) for v in graph.vertices)
    if q > n:
        raise ValueError(f"q={q} exceeds valency {n}")
    if q > labeling.rank:
        v = graph.vertices[0]
        return False, (v, graph.star(v)[:q])
    for v in graph.vertices:
        for sub in combinations(graph.star(v), q):
            if lattice.rank([labeling[d] for d in sub]) < q:
                return False, (v, sub)
    return True, None


def gkm_degree(graph: Graph, labeling: Labeling) -> int:
    """Largest q for which the labeling is q-independent."""
    n = max(len(graph.star(v)) for v in graph.vertices)
    best = 0
    for q in range(1, n + 1):
        if not check_gkm_q(graph, labeling, q)[0]:
            break
        best = q
    return best


def check_effective(labeling: Labeling) -> str:
    """``"effective"``, ``"almost_effective"`` or ``"neither"``."""
    factors = lattice.invariant_factors(labeling.matrix())
    if len(factors) < labeling.rank:
        return "neither"
    return "effective" if all(f == 1 for f in factors) else "almost_effective"


def derive_connection(graph: Graph, labeling: Labeling) -> Graph:
    """The unique connection compatible with a 3-independent labeling.

    Valency-2 graphs are handled too (the bijections are forced).  Raises
    :class:`ConnectionDerivationError` if some edge has zero or several candidates.
    """
    lab = labeling.lift
    nabla = []
    for d in graph.directed_edges():
        m = {d: rev(d)}
        targets = [f for f in graph.star(graph.dst(d)) if f != rev(d)]
        for e in graph.star(graph.src(d)):
            if e == d:
                continue
            found = [f for f in targets if _solve_congruence(lab[f], lab[e], lab[d])]
            if not found:
                raise ConnectionDerivationError(f"no solution for {graph.name(e)} along {graph.name(d)}")
            if len(found) > 1:
                raise ConnectionDerivationError(f"ambiguous image of {graph.name(e)} along {graph.name(d)}")
            m[e] = found[0]
        if len(set(m.values())) != len(m):
            raise ConnectionDerivationError(f"connection along {graph.name(d)} is not a bijection")
        nabla.append(m)
    out = graph.with_connection(nabla)
    problems = validate_base(out)
    if problems:
        raise ConnectionDerivationError("; ".join(problems))
    return out


def validate_gkm(graph: Graph, labeling: Labeling) -> list[str]:
    """Full axiom check: graph, connection, pairwise independence, congruence.

    Signed labelings must produce the all-ones sign function.
    """
    out = validate_base(graph)
    if len(labeling.lift) != graph.num_directed:
        return out + ["labeling does not cover every directed edge"]
    for d in graph.directed_edges():
        if labeling[rev(d)] != tuple(-x for x in labeling[d]):
            out.append(f"lift of {graph.name(rev(d))} is not the negative of {graph.name(d)}")
    if graph.valency >= 2:
        ok, bad = check_gkm_q(graph, labeling, 2)
        if not ok:
            v, (a, b) = bad
            out.append(f"labels of {graph.name(a)}, {graph.name(b)} at {v!r} are dependent")
    if out:
        return out
    try:
        eps, c = derive_eps_c(graph, labeling)
    except NotCompatibleError as exc:
        return [str(exc)]
    out += check_sign_function(graph, eps)
    out += check_invariant_function(graph, eps, c)
    if labeling.signed:
        for d in graph.directed_edges():
            bad = [e for e, s in eps[d].coeffs.items() if s != 1]
            if bad:
                out.append(f"signed labeling needs a sign flip along {graph.name(d)} at {graph.name(bad[0])}")
    return out
