import random

import pytest
import sympy

from gkm import corpus, lattice
from gkm.labels import Labeling, derive_eps_c
from gkm.monodromy import (
    axial_group,
    axial_group_full,
    axial_to_label,
    bfs_tree,
    is_axial_element,
    is_label_function,
    label_to_axial,
    lift_change_conjugator,
    phi_edge,
    phi_path,
    pi1_generators,
)
from mutations import random_valid_graph
from oracles import phi_matrix

NAMES = ["s6_signed", "s6_unsigned", "fl3", "cp1", "cp2", "cp3", "cube3", "bott3", "cp3_projected"]


@pytest.mark.parametrize("name", NAMES)
def test_phi_matches_oracle(docs, name):
    g, lab = docs[name].graph, docs[name].labeling
    eps, c = derive_eps_c(g, lab)
    for d in g.directed_edges():
        assert sympy.Matrix(phi_edge(g, eps, c, d).tolist()) == phi_matrix(g, lab, d)


def test_s6_generator_matrices():
    doc = corpus.s6_unsigned()
    A = axial_group(doc.graph, doc.labeling)
    # with the self-connection every generator acts trivially
    for i in range(len(A.presentation.generators)):
        assert (A.monodromy(i) == lattice.identity(3)).all()
    doc = corpus.s6_signed()
    A = axial_group(doc.graph, doc.labeling)
    assert A.rank == 2
    assert any(not (A.monodromy(i) == lattice.identity(3)).all() for i in range(2))


def test_pi1_generators_count(docs):
    for name in NAMES:
        g = docs[name].graph
        pres = pi1_generators(g)
        assert len(pres.generators) == len(g.edge_ids) - len(g.vertices) + 1
        for word in pres.generators:
            phi_path(g, *derive_eps_c(g, docs[name].labeling), word)  # closed at the basepoint
        tree = bfs_tree(g, pres.basepoint)
        assert set(tree) == set(g.vertices)


@pytest.mark.parametrize("name", NAMES)
def test_axial_elements_are_compatible(docs, name):
    g, lab = docs[name].graph, docs[name].labeling
    A = axial_group(g, lab)
    for f in A.elements():
        assert is_axial_element(g, A.eps, A.c, f)
        a = axial_to_label(g, f)
        assert is_label_function(g, A.eps, A.c, a)
        assert label_to_axial(g, a) == f


@pytest.mark.parametrize("name", NAMES)
def test_label_components_lie_in_A(docs, name):
    g, lab = docs[name].graph, docs[name].labeling
    A = axial_group(g, lab)
    for i in range(lab.rank):
        comp = lab.component(i)
        assert is_label_function(g, A.eps, A.c, comp)
        assert A.contains([comp[d] for d in g.star(A.basepoint)])


def test_full_ambient_agrees_with_basepoint(docs):
    for name in NAMES:
        g, lab = docs[name].graph, docs[name].labeling
        A = axial_group(g, lab)
        assert axial_group_full(g, A.eps, A.c).shape[0] == A.rank


def test_rank_independent_of_basepoint(docs):
    for name in ("fl3", "s6_signed", "bott3"):
        g, lab = docs[name].graph, docs[name].labeling
        ranks = {axial_group(g, lab, basepoint=v).rank for v in g.vertices}
        assert len(ranks) == 1


def test_lift_change_conjugator_rejects_unrelated_lifts():
    doc = corpus.cp(2)
    other = Labeling(2, [tuple(2 * x for x in v) for v in doc.labeling.lift])
    with pytest.raises(ValueError):
        lift_change_conjugator(doc.graph, doc.labeling, other)


def test_random_graphs_phi_involution():
    rng = random.Random(7)
    for _ in range(30):
        doc = random_valid_graph(rng)
        g = doc.graph
        eps, c = derive_eps_c(g, doc.labeling)
        for d in g.directed_edges():
            m = phi_edge(g, eps, c, d ^ 1) @ phi_edge(g, eps, c, d)
            assert (m == lattice.identity(m.shape[0])).all()
