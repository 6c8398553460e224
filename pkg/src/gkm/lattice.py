"""Exact integer linear algebra on numpy object arrays.

Every matrix handed out by this module has ``dtype=object`` and holds Python
ints, so nothing overflows.  Row-style conventions throughout: a lattice is
given by the rows of a matrix unless a function says otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

__all__ = [
    "as_int_matrix",
    "identity",
    "xgcd",
    "hnf",
    "snf",
    "invariant_factors",
    "integer_kernel",
    "rank",
    "determinant",
    "is_unimodular",
    "lattice_basis",
    "saturate",
    "same_lattice",
    "contains",
    "is_primitive_set",
    "rational_solve",
]


def as_int_matrix(m, cols: int | None = None) -> np.ndarray:
    """Copy ``m`` into a 2-d object array of Python ints.

    ``cols`` fixes the width of an empty input (no rows).
    """
    if isinstance(m, np.ndarray) and m.ndim == 2:
        out = np.empty(m.shape, dtype=object)
        for idx, x in np.ndenumerate(m):
            out[idx] = int(x)
        return out
    rows = [list(r) for r in m]
    if not rows:
        return np.empty((0, cols or 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = int(x)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _rows(m) -> list[list[int]]:
    return [[int(x) for x in r] for r in as_int_matrix(m)]


def _to_array(rows: list[list[int]], cols: int) -> np.ndarray:
    return as_int_matrix(rows, cols=cols)


def hnf(m) -> Tuple[np.ndarray, np.ndarray]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ m``, ``U`` unimodular, pivots positive,
    entries above each pivot reduced into ``[0, pivot)`` and zero rows last.
    """
    a = as_int_matrix(m)
    r, c = a.shape
    A = _rows(a)
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    p = 0
    for col in range(c):
        if p == r:
            break
        for i in range(p + 1, r):
            b = A[i][col]
            if b == 0:
                continue
            a0 = A[p][col]
            g, x, y = xgcd(a0, b)
            s, t = -b // g, a0 // g
            for M in (A, U):
                rp, ri = M[p], M[i]
                M[p] = [x * u + y * v for u, v in zip(rp, ri)]
                M[i] = [s * u + t * v for u, v in zip(rp, ri)]
        piv = A[p][col]
        if piv == 0:
            continue
        if piv < 0:
            A[p] = [-x for x in A[p]]
            U[p] = [-x for x in U[p]]
            piv = -piv
        for i in range(p):
            q = A[i][col] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[p])]
                U[i] = [u - q * v for u, v in zip(U[i], U[p])]
        p += 1
    return _to_array(A, c), _to_array(U, r)


def snf(m) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``S == U @ m @ V`` with ``U``, ``V`` unimodular.

    The diagonal of ``S`` is nonnegative and each entry divides the next.
    """
    a = as_int_matrix(m)
    r, c = a.shape
    S = _rows(a)
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        S[dst] = [u + k * v for u, v in zip(S[dst], S[src])]
        U[dst] = [u + k * v for u, v in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for M in (S, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = S[t][t]
            dirty = False
            for i in range(t + 1, r):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // piv))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, c):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // piv))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if S[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < r and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return _to_array(S, c), _to_array(U, r), _to_array(V, c)


def invariant_factors(m) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in order."""
    S, _, _ = snf(m)
    return [int(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]


def rank(m) -> int:
    H, _ = hnf(m)
    return sum(1 for row in H if any(x != 0 for x in row))


def integer_kernel(m, cols: int | None = None) -> np.ndarray:
    """Saturated basis of ``{x in Z^cols : m @ x == 0}``, one vector per column.

    The basis is returned in Hermite normal form (of its transpose), so two
    calls on matrices with the same kernel give identical output.
    """
    a = as_int_matrix(m, cols=cols)
    n = a.shape[1]
    H, U = hnf(a.T)
    kern = [list(U[i]) for i in range(n) if all(x == 0 for x in H[i])]
    if not kern:
        return np.empty((n, 0), dtype=object)
    B, _ = hnf(kern)
    return B.T.copy()


def determinant(m) -> int:
    """Bareiss fraction-free determinant of a square matrix."""
    A = _rows(m)
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(m) -> bool:
    a = as_int_matrix(m)
    return a.shape[0] == a.shape[1] and abs(determinant(a)) == 1


def lattice_basis(rows, cols: int | None = None) -> np.ndarray:
    """Canonical (HNF, zero rows dropped) basis of the lattice spanned by ``rows``."""
    H, _ = hnf(as_int_matrix(rows, cols=cols))
    keep = [list(r) for r in H if any(x != 0 for x in r)]
    return as_int_matrix(keep, cols=H.shape[1])


def saturate(rows, cols: int | None = None) -> np.ndarray:
    """Basis of ``span_Q(rows) ∩ Z^n`` in canonical form."""
    a = as_int_matrix(rows, cols=cols)
    n = a.shape[1]
    # Vectors orthogonal to the rows, then everything orthogonal to those.
    perp = integer_kernel(a, cols=n).T
    back = integer_kernel(perp, cols=n)
    return lattice_basis(back.T, cols=n)


def same_lattice(a, b, cols: int | None = None) -> bool:
    A = lattice_basis(a, cols=cols)
    B = lattice_basis(b, cols=cols)
    return A.shape == B.shape and bool((A == B).all())


def contains(lattice_rows, vectors, cols: int | None = None) -> bool:
    """Whether every row of ``vectors`` lies in the Z-span of ``lattice_rows``."""
    L = as_int_matrix(lattice_rows, cols=cols)
    V = as_int_matrix(vectors, cols=L.shape[1])
    if V.shape[0] == 0:
        return True
    return same_lattice(np.vstack([L, V]), L, cols=L.shape[1])


def is_primitive_set(vectors: Sequence[Sequence[int]]) -> bool:
    """Whether linearly independent ``vectors`` extend to a basis of Z^n.

    Raises ``ValueError`` on dependent input.
    """
    a = as_int_matrix(vectors)
    if rank(a) != a.shape[0]:
        raise ValueError("vectors are linearly dependent")
    return all(d == 1 for d in invariant_factors(a))


def rational_solve(a, b) -> list[list[Fraction]] | None:
    """Solve ``X @ a == b`` over Q for a square invertible ``a``.

    ``b`` holds one right-hand side per row; returns the rows of ``X`` or
    ``None`` when ``a`` is singular.
    """
    A = [[Fraction(int(x)) for x in r] for r in as_int_matrix(a)]
    n = len(A)
    B = [[Fraction(int(x)) for x in r] for r in as_int_matrix(b, cols=n)]
    # X a = b  <=>  a^T X^T = b^T; eliminate on the augmented transpose.
    M = [[A[j][i] for j in range(n)] + [B[k][i] for k in range(len(B))] for i in range(n)]
    w = n + len(B)
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [[M[i][n + k] for i in range(n)] for k in range(len(B))]

