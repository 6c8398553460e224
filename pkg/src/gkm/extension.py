"""Extensions of GKM graphs to higher-rank labelings, and the torus-extension check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import lattice
from .graph import Graph, TwoFace, enumerate_2faces, transversal_monodromy_trivial
from .homotopy import HypothesisError, check_hamcase_hypotheses, decompose_loop, free_reduce
from .labels import Labeling, check_effective, check_gkm_q, derive_eps_c, validate_gkm
from .monodromy import AxialGroup, axial_group

__all__ = [
    "ExtensionError",
    "ExtensionResult",
    "PipelineReport",
    "extension_rank",
    "build_extension",
    "verify_extension",
    "torus_extension_pipeline",
]


class ExtensionError(ValueError):
    pass


@dataclass
class ExtensionResult:
    """Labels ``α′`` of rank q and the projection ``p`` (k×q) with ``p·α′ = α̃``."""

    labeling: Labeling
    projection: np.ndarray

    @property
    def rank(self) -> int:
        return self.labeling.rank


def extension_rank(graph: Graph, labeling: Labeling) -> int:
    return axial_group(graph, labeling).rank


def _axial_at_base(graph: Graph, A: AxialGroup, values: Sequence[int]) -> list[int]:
    return [int(values[d]) for d in graph.star(A.basepoint)]


def build_extension(graph: Graph, labeling: Labeling, q: int, axial: AxialGroup | None = None) -> ExtensionResult:
    """Rank-``q`` extension with projection ``[I_k | 0]``.

    The label components, seen as elements of A(Γ), are completed to ``q``
    independent elements by adding HNF basis vectors of A(Γ) in order.  For
    an effective base the result is re-coordinatised so its labels span
    Z^q while the first k coordinates stay equal to ``α̃``.
    """
    k = labeling.rank
    if q < k:
        raise ExtensionError(f"target rank {q} is below the base rank {k}")
    kind = check_effective(labeling)
    if kind == "neither":
        raise ExtensionError("base labeling is not almost effective")
    A = axial if axial is not None else axial_group(graph, labeling)
    if q > A.rank:
        raise ExtensionError(f"target rank {q} exceeds rk A = {A.rank}")
    n = len(graph.star(A.basepoint))
    chosen = [_axial_at_base(graph, A, labeling.component(i)) for i in range(k)]
    for row in A.basis:
        if len(chosen) == q:
            break
        cand = chosen + [list(row)]
        if lattice.rank(lattice.as_int_matrix(cand, cols=n)) == len(cand):
            chosen = cand
    assert len(chosen) == q
    # β(d) = (f_1, ..., f_q) evaluated on d
    elems = [A.element(x) for x in chosen]
    beta = []
    for d in graph.directed_edges():
        v, pos = graph.src(d), graph.star_pos(d)
        beta.append(tuple(f[v][pos] for f in elems))
    if kind == "effective":
        beta = _normalize_effective(beta[0::2], k, q, beta)
    lab = Labeling(q, beta, labeling.signed)
    proj = lattice.as_int_matrix([[int(i == j) for j in range(q)] for i in range(k)], cols=q)
    return ExtensionResult(lab, proj)


def _normalize_effective(forward, k: int, q: int, beta):
    """Coordinates of ``β`` in a basis of its span whose first k rows project to e_1..e_k."""
    Bn = lattice.lattice_basis(forward, cols=q)
    H, U = lattice.hnf(Bn[:, :k])
    C = U @ Bn
    top = C[:k, :k]
    if not (top == lattice.identity(k)).all() or any(x != 0 for x in C[k:, :k].flat):
        raise ExtensionError("projection of the extended labels is not onto Z^k")
    sol = lattice.rational_solve(C, beta)
    out = []
    for row in sol:
        if any(x.denominator != 1 for x in row):
            raise ExtensionError("label outside its own span")
        out.append(tuple(int(x) for x in row))
    return out


def verify_extension(graph: Graph, base: Labeling, result: ExtensionResult) -> list[str]:
    """Axioms for the extended labels, ``p·α′ = α̃`` and equal ε, c."""
    out = list(validate_gkm(graph, result.labeling))
    p = result.projection
    for d in graph.directed_edges():
        img = tuple(int(x) for x in p @ np.array(result.labeling[d], dtype=object))
        if img != base[d]:
            out.append(f"p·α′ != α̃ on {graph.name(d)}")
            break
    if not out:
        e0, c0 = derive_eps_c(graph, base)
        e1, c1 = derive_eps_c(graph, result.labeling)
        if [dict(x.coeffs) for x in e0] != [dict(x.coeffs) for x in e1]:
            out.append("sign function changed")
        if [dict(x.coeffs) for x in c0] != [dict(x.coeffs) for x in c1]:
            out.append("invariant function changed")
    return out


@dataclass
class PipelineReport:
    valency: int
    rank: int
    gkm3: bool
    gkm3_witness: tuple | None
    faces: list[TwoFace]
    transversal_ok: bool
    transversal_witnesses: list[tuple] = field(default_factory=list)
    monodromy_ok: bool = False
    monodromy_witnesses: list[tuple] = field(default_factory=list)
    hamcase: str | None = None
    extension: ExtensionResult | None = None

    @property
    def success(self) -> bool:
        return self.gkm3 and self.transversal_ok and self.monodromy_ok and self.extension is not None


def torus_extension_pipeline(
    graph: Graph,
    labeling: Labeling,
    orientation: Sequence[int] | None = None,
    faces: Sequence[TwoFace] | None = None,
) -> PipelineReport:
    """Check (a) trivial transversal monodromy on every 2-face and (b) trivial
    A-monodromy on every π₁ generator; build the rank-n extension when both hold.

    With an acyclic ``orientation`` whose faces all have ``b₄ = 1``, every
    generator is also decomposed into conjugated 2-faces and the outcome is
    recorded in ``hamcase``.
    """
    n = graph.valency
    faces = list(enumerate_2faces(graph)) if faces is None else list(faces)
    q = min(3, n)
    gkm3, witness = check_gkm_q(graph, labeling, q)
    trans = []
    for f in faces:
        for (pos, e), ok in sorted(transversal_monodromy_trivial(graph, f).items()):
            if not ok:
                trans.append((f, pos, e))
    A = axial_group(graph, labeling)
    mono = []
    eye = lattice.identity(n)
    for i in range(len(A.presentation.generators)):
        m = A.monodromy(i)
        if not (m == eye).all():
            mono.append((i, A.presentation.generators[i], m))
    report = PipelineReport(n, A.rank, gkm3, witness, faces, not trans, trans, not mono, mono)
    if orientation is not None and not trans:
        problems = check_hamcase_hypotheses(graph, faces, orientation)
        if problems:
            report.hamcase = "not applicable: " + "; ".join(problems)
        else:
            try:
                for g in A.presentation.generators:
                    w = decompose_loop(graph, faces, orientation, g, A.basepoint)
                    if free_reduce(w.expand()) != free_reduce(g):
                        raise HypothesisError("expanded word differs from the generator")
                report.hamcase = f"certified: {len(A.presentation.generators)} generators decomposed"
            except HypothesisError as exc:
                report.hamcase = f"failed: {exc}"
    if report.transversal_ok and report.monodromy_ok:
        assert A.rank == n, "trivial monodromy must give rk A = n"
        if gkm3 and check_effective(labeling) != "neither":
            report.extension = build_extension(graph, labeling, n, A)
    return report
