import pytest

from gkm import corpus
from gkm.graph import Graph
from gkm.labels import (
    ConnectionDerivationError,
    Labeling,
    NotCompatibleError,
    StarVector,
    check_effective,
    check_gkm_q,
    check_invariant_function,
    check_sign_function,
    derive_connection,
    derive_eps_c,
    gkm_degree,
    validate_gkm,
)
from oracles import brute_eps_c


@pytest.mark.parametrize("name", ["s6_signed", "s6_unsigned", "fl3", "cp3", "cube3", "bott3", "cp3_projected"])
def test_eps_c_against_brute_force(docs, name):
    g, lab = docs[name].graph, docs[name].labeling
    eps, c = derive_eps_c(g, lab)
    for d in g.directed_edges():
        assert eps[d][d] == 1 and c[d][d] == -2
        for e in g.star(g.src(d)):
            if e != d:
                assert (eps[d][e], c[d][e]) == brute_eps_c(g, lab, d, e)
    assert check_sign_function(g, eps) == []
    assert check_invariant_function(g, eps, c) == []


def test_s6_signs():
    doc = corpus.s6_unsigned()
    eps, c = derive_eps_c(doc.graph, doc.labeling)
    assert all(eps[d][e] == -1 for d in doc.graph.directed_edges() for e in eps[d].coeffs if e != d)
    assert all(c[d][e] == 0 for d in doc.graph.directed_edges() for e in c[d].coeffs if e != d)
    doc = corpus.s6_signed()
    eps, c = derive_eps_c(doc.graph, doc.labeling)
    assert all(s == 1 for x in eps for s in x.coeffs.values())


def test_star_vector_roundtrip():
    g = corpus.cp(2).graph
    v = g.vertices[0]
    sv = StarVector.from_array(g, v, [3, -1])
    assert list(sv.to_array(g)) == [3, -1]


def test_gkm_q():
    doc = corpus.cp(3)
    assert check_gkm_q(doc.graph, doc.labeling, 3) == (True, None)
    assert gkm_degree(doc.graph, doc.labeling) == 3
    fl = corpus.fl3()
    ok, (v, sub) = check_gkm_q(fl.graph, fl.labeling, 3)
    assert not ok and len(sub) == 3
    with pytest.raises(ValueError):
        check_gkm_q(doc.graph, doc.labeling, 4)
    assert gkm_degree(fl.graph, fl.labeling) == 2


def test_effectivity():
    assert check_effective(Labeling(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])) == "effective"
    assert check_effective(Labeling(2, [(2, 0), (-2, 0), (0, 1), (0, -1)])) == "almost_effective"
    assert check_effective(Labeling(2, [(1, 1), (-1, -1), (2, 2), (-2, -2)])) == "neither"


def test_derive_connection_unique_for_gkm3(docs):
    for name in ("cp3", "cube3", "bott3", "cp5"):
        g, lab = docs[name].graph, docs[name].labeling
        derived = derive_connection(g.with_connection(None), lab)
        assert derived.nabla == g.nabla


def test_derive_connection_ambiguous_below_gkm3():
    doc = corpus.fl3()
    with pytest.raises(ConnectionDerivationError):
        derive_connection(doc.graph.with_connection(None), doc.labeling)


def test_validate_gkm_failures():
    doc = corpus.cp(2)
    g = doc.graph
    # dependent labels at a vertex
    lift = list(doc.labeling.lift)
    v = g.vertices[0]
    a, b = g.star(v)
    lift[b] = lift[a]
    lift[b ^ 1] = tuple(-x for x in lift[a])
    probs = validate_gkm(g, Labeling(2, lift))
    assert probs
    # reversed lift on one edge: fine unsigned, rejected signed
    lift = list(doc.labeling.lift)
    lift[0], lift[1] = lift[1], lift[0]
    assert validate_gkm(g, Labeling(2, lift, signed=False)) == []
    assert any("sign" in p for p in validate_gkm(g, Labeling(2, lift, signed=True)))


def test_incompatible_labels():
    doc = corpus.cp(2)
    lift = list(doc.labeling.lift)
    lift[0] = (5, 7)
    lift[1] = (-5, -7)
    with pytest.raises(NotCompatibleError):
        derive_eps_c(doc.graph, Labeling(2, lift))


def test_labeling_from_edges():
    g = Graph(["a", "b"], [("x", "a", "b")])
    lab = Labeling.from_edges(g, {"x": (1, 2)})
    assert lab[0] == (1, 2) and lab[1] == (-1, -2)
    assert lab.component(1) == (2, -2)
    assert lab.matrix().tolist() == [[1, 2]]
