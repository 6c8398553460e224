import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gkm import lattice
from oracles import gcd_of_maximal_minors, sympy_hnf_rows, sympy_invariant_factors

small = st.integers(min_value=-9, max_value=9)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (0, 0), (7, -3)]:
        g, x, y = lattice.xgcd(a, b)
        assert g >= 0 and x * a + y * b == g
        assert g == sympy.gcd(a, b)


def test_hnf_small_example():
    H, U = lattice.hnf([[2, 4], [1, 3]])
    assert H.tolist() == [[1, 1], [0, 2]]
    assert (U @ lattice.as_int_matrix([[2, 4], [1, 3]]) == H).all()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_properties(m):
    H, U = lattice.hnf(m)
    A = lattice.as_int_matrix(m)
    assert (U @ A == H).all()
    assert lattice.is_unimodular(U)
    last = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            assert all(not any(r) for r in H[i:])
            break
        p = nz[0]
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= H[k][p] < row[p]
        last = p


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_hnf_spans_the_sympy_lattice(m):
    # sympy normalises differently, so compare spans and covolume
    if sympy.Matrix(m).rank() != len(m):
        return
    ours = lattice.lattice_basis(m)
    theirs = sympy_hnf_rows(m)
    assert lattice.contains(theirs, ours) and lattice.contains(ours, theirs)
    assert gcd_of_maximal_minors(ours.tolist()) == gcd_of_maximal_minors(m)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_properties(m):
    S, U, V = lattice.snf(m)
    A = lattice.as_int_matrix(m)
    assert (U @ A @ V == S).all()
    assert lattice.is_unimodular(U) and lattice.is_unimodular(V)
    d = [S[i, i] for i in range(min(S.shape))]
    for i in range(S.shape[0]):
        for j in range(S.shape[1]):
            if i != j:
                assert S[i, j] == 0
    nz = [x for x in d if x != 0]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert lattice.invariant_factors(m) == sympy_invariant_factors(m)


def test_snf_example():
    S, _, _ = lattice.snf([[2, 0], [0, 3]])
    assert S.tolist() == [[1, 0], [0, 6]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_is_saturated_kernel(m):
    n = len(m[0])
    K = lattice.integer_kernel(m, cols=n)
    A = lattice.as_int_matrix(m)
    assert K.shape == (n, n - sympy.Matrix(m).rank())
    if K.shape[1]:
        assert not (A @ K).any()
        assert gcd_of_maximal_minors(K.T.tolist()) == 1


def test_kernel_edge_cases():
    assert lattice.integer_kernel([[1, 1, 1]]).shape == (3, 2)
    assert lattice.integer_kernel(lattice.identity(2)).shape == (2, 0)
    assert lattice.integer_kernel(np.empty((0, 3), dtype=object), cols=3).shape == (3, 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant(m):
    assert lattice.determinant(m) == sympy.Matrix(m).det()


def test_saturate_and_contains():
    sat = lattice.saturate([[2, 4, 6]])
    assert sat.tolist() == [[1, 2, 3]]
    assert lattice.contains([[1, 0], [0, 2]], [[3, 4]])
    assert not lattice.contains([[1, 0], [0, 2]], [[0, 1]])
    assert lattice.same_lattice([[1, 1], [0, 1]], [[1, 0], [0, 1]])


def test_primitive_sets():
    assert lattice.is_primitive_set([[1, 0, 0], [0, 1, 0]])
    assert not lattice.is_primitive_set([[1, 1], [1, -1]])
    assert lattice.is_primitive_set([[2, 3]])
    with pytest.raises(ValueError):
        lattice.is_primitive_set([[1, 2], [2, 4]])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_rational_solve(a):
    b = [[1] * len(a), list(range(len(a)))]
    x = lattice.rational_solve(a, b)
    if sympy.Matrix(a).det() == 0:
        assert x is None
        return
    X = sympy.Matrix(x)
    assert X * sympy.Matrix(a) == sympy.Matrix(b)
