"""Independent reference computations used by the tests.

Nothing here calls the lattice or monodromy code of the package: signs and
invariants are found by brute force, kernels come from sympy over Q, and
saturation is decided from the gcd of maximal minors.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from math import gcd

import sympy


def brute_eps_c(graph, lab, d, e, bound=64):
    """``(s, m)`` with ``α(∇_d e) = s·α(e) + m·α(d)`` found by search."""
    target = lab[graph.transport(d, e)]
    hits = []
    for s in (1, -1):
        for m in range(-bound, bound + 1):
            if all(t == s * a + m * b for t, a, b in zip(target, lab[e], lab[d])):
                hits.append((s, m))
    assert len(hits) == 1, hits
    return hits[0]


def phi_matrix(graph, lab, d) -> sympy.Matrix:
    """φ_d built from brute-force ε, c; rows follow str t(d), columns str i(d)."""
    src, dst = graph.star(graph.src(d)), graph.star(graph.dst(d))
    m = sympy.zeros(len(dst), len(src))
    j0 = src.index(d)
    for col, e in enumerate(src):
        row = dst.index(graph.transport(d, e))
        if e == d:
            s, c = 1, -2
        else:
            s, c = brute_eps_c(graph, lab, d, e)
        m[row, col] += s
        m[row, j0] += c
    return m


def fixed_lattice_rational(graph, lab, basepoint):
    """Rational basis (list of sympy column vectors) of the compatible values at ``basepoint``.

    A symbolic vector is pushed along a BFS tree and every edge condition
    ``f_{t(e)} = φ_e f_{i(e)}`` is imposed.
    """
    n = len(graph.star(basepoint))
    transfer = {basepoint: sympy.eye(n)}
    todo = deque([basepoint])
    while todo:
        v = todo.popleft()
        for d in graph.star(v):
            w = graph.dst(d)
            if w not in transfer:
                transfer[w] = phi_matrix(graph, lab, d) * transfer[v]
                todo.append(w)
    rows = []
    for d in graph.directed_edges():
        a, b = graph.src(d), graph.dst(d)
        rows.append(phi_matrix(graph, lab, d) * transfer[a] - transfer[b])
    big = sympy.Matrix.vstack(*rows) if rows else sympy.zeros(0, n)
    return big.nullspace(), n


def rational_rank(rows) -> int:
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def gcd_of_maximal_minors(rows) -> int:
    m = sympy.Matrix(rows)
    r, n = m.shape
    g = 0
    for cols in combinations(range(n), r):
        g = gcd(g, int(m[:, list(cols)].det()))
    return g


def same_saturated_lattice(basis_rows, rational_vectors, n) -> bool:
    """Whether ``basis_rows`` is a basis of ``span_Q(rational_vectors) ∩ Z^n``."""
    r = len(rational_vectors)
    if len(basis_rows) != r:
        return False
    if r == 0:
        return True
    if rational_rank(basis_rows) != r:
        return False
    joint = [list(v) for v in basis_rows] + [list(v.T) for v in rational_vectors]
    if rational_rank(joint) != r:
        return False
    return gcd_of_maximal_minors(basis_rows) == 1


def sympy_hnf_rows(rows):
    """Row-style HNF via sympy's column-style one (transpose in, transpose out)."""
    from sympy.matrices.normalforms import hermite_normal_form

    if not rows:
        return []
    h = hermite_normal_form(sympy.Matrix(rows).T).T
    return [list(map(int, h.row(i))) for i in range(h.rows)]


def sympy_invariant_factors(rows):
    from sympy.matrices.normalforms import smith_normal_form

    if not rows or not rows[0]:
        return []
    s = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]


def homology_h1(n_vertices, edges, chains):
    """H₁ = ker ∂₁ / im ∂₂ by sympy SNF: ``edges`` as (tail, head) indices, ``chains`` as edge-coefficient lists."""
    ne = len(edges)
    d1 = sympy.zeros(n_vertices, ne)
    for j, (a, b) in enumerate(edges):
        d1[a, j] -= 1
        d1[b, j] += 1
    cycles = ne - d1.rank()
    if not chains:
        return cycles, []
    d2 = sympy.Matrix(chains).T
    factors = sympy_invariant_factors([list(d2.row(i)) for i in range(d2.rows)])
    return cycles - len(factors), [t for t in factors if t > 1]


def words_reduce(word):
    out = []
    for d in word:
        if out and out[-1] == d ^ 1:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def face_cycles_brute(graph):
    """Every closed connection path, found by following (x, y) states naively."""
    seen, faces = set(), []
    for v in graph.vertices:
        for x in graph.star(v):
            for y in graph.star(v):
                if x == y or (x, y) in seen:
                    continue
                state, loop = (x, y), []
                while True:
                    seen.add(state)
                    loop.append(state[0])
                    nxt = (graph.transport(state[0], state[1]), state[0] ^ 1)
                    if nxt == (x, y):
                        break
                    state = nxt
                faces.append(tuple(loop))
    return faces
