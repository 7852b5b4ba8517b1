"""Exact integer lattice arithmetic.

Vectors are tuples of Python ints and matrices are lists of row tuples, so
nothing here ever overflows or rounds.  Row-style conventions throughout: a
lattice is the integer row span of a matrix.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def dot(u: Sequence[int], v: Sequence[int]):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Sequence[int]) -> Vector:
    return tuple(-a for a in v)


def zero(n: int) -> Vector:
    return (0,) * n


def matvec(M: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    """Column action M @ v."""
    return tuple(dot(row, v) for row in M)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[Vector]:
    cols = list(zip(*B)) if B else []
    return [tuple(dot(row, col) for col in cols) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    if not A:
        return [() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*A)]


def identity(n: int) -> list[Vector]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int):
    """Row Hermite normal form.

    Returns (H, U) where U is unimodular (len(rows) square) and U @ A = H.
    The nonzero rows of H come first; each has a positive pivot, pivots move
    strictly right, and entries above a pivot lie in [0, pivot).
    """
    A = [list(r) for r in rows]
    m = len(A)
    U = [list(r) for r in identity(m)]
    piv_row = 0
    for col in range(ncols):
        if piv_row >= m:
            break
        # gather the gcd of column entries at and below piv_row into piv_row
        for i in range(piv_row + 1, m):
            if A[i][col] == 0:
                continue
            a, b = A[piv_row][col], A[i][col]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            ra, rb = A[piv_row], A[i]
            ua, ub = U[piv_row], U[i]
            A[piv_row] = [x * s + y * t for s, t in zip(ra, rb)]
            A[i] = [-q * s + p * t for s, t in zip(ra, rb)]
            U[piv_row] = [x * s + y * t for s, t in zip(ua, ub)]
            U[i] = [-q * s + p * t for s, t in zip(ua, ub)]
        if A[piv_row][col] == 0:
            continue
        if A[piv_row][col] < 0:
            A[piv_row] = [-s for s in A[piv_row]]
            U[piv_row] = [-s for s in U[piv_row]]
        pv = A[piv_row][col]
        for i in range(piv_row):
            q = A[i][col] // pv
            if q:
                A[i] = [s - q * t for s, t in zip(A[i], A[piv_row])]
                U[i] = [s - q * t for s, t in zip(U[i], U[piv_row])]
        piv_row += 1
    return [tuple(r) for r in A], [tuple(r) for r in U]


def hnf(rows: Iterable[Sequence[int]], ncols: int) -> list[Vector]:
    """Nonzero rows of the Hermite normal form: a canonical lattice basis."""
    H, _ = hnf_with_transform(list(rows), ncols)
    return [r for r in H if any(r)]


def pivots(H: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for r in H:
        out.append(next(i for i, a in enumerate(r) if a))
    return out


def reduce_mod(H: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    """Canonical representative of v modulo the lattice with HNF basis H."""
    v = list(v)
    for r, p in zip(H, pivots(H)):
        q = v[p] // r[p]
        if q:
            v = [a - q * b for a, b in zip(v, r)]
    return tuple(v)


def in_lattice(H: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return not any(reduce_mod(H, v))


def lattice_coords(H: Sequence[Sequence[int]], v: Sequence[int]) -> Vector | None:
    """Integer coefficients c with sum c_i H_i = v, or None."""
    v = list(v)
    coeffs = []
    for r, p in zip(H, pivots(H)):
        q, rem = divmod(v[p], r[p])
        if rem:
            return None
        coeffs.append(q)
        v = [a - q * b for a, b in zip(v, r)]
    if any(v):
        return None
    return tuple(coeffs)


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis (HNF) of the integer relations {c : sum c_i rows_i = 0}."""
    H, U = hnf_with_transform(rows, ncols)
    ker = [u for h, u in zip(H, U) if not any(h)]
    return hnf(ker, len(rows)) if ker else []


def right_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of the integer vectors x with A @ x = 0 (a saturated lattice)."""
    if not A:
        return identity(ncols)
    return left_kernel(transpose(A), len(A))


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(hnf(rows, ncols))


def saturation(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """HNF basis of (rational span of rows) intersected with Z^ncols."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    perp = right_kernel(rows, ncols)
    return hnf(right_kernel(perp, ncols), ncols) if perp else identity(ncols)


def smith(A: Sequence[Sequence[int]], nrows: int | None = None, ncols: int | None = None):
    """Smith normal form with transforms.

    Returns (D, S, T): S (m x m) and T (n x n) unimodular with S @ A @ T = D,
    D diagonal with d_1 | d_2 | ... and nonnegative entries.
    """
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    D = [list(r) for r in A] if A else [[0] * n for _ in range(m)]
    S = [list(r) for r in identity(m)]
    T = [list(r) for r in identity(n)]

    def row_comb(M, i, j, a, b, c, d):
        ri, rj = M[i], M[j]
        M[i] = [a * s + b * t for s, t in zip(ri, rj)]
        M[j] = [c * s + d * t for s, t in zip(ri, rj)]

    def col_comb(M, i, j, a, b, c, d):
        for r in M:
            s, t = r[i], r[j]
            r[i] = a * s + b * t
            r[j] = c * s + d * t

    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        D[t], D[i] = D[i], D[t]
        S[t], S[i] = S[i], S[t]
        for r in D:
            r[t], r[j] = r[j], r[t]
        for r in T:
            r[t], r[j] = r[j], r[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    a, b = D[t][t], D[i][t]
                    g, x, y = (abs(a), a // abs(a), 0) if b % a == 0 else xgcd(a, b)
                    row_comb(D, t, i, x, y, -b // g, a // g)
                    row_comb(S, t, i, x, y, -b // g, a // g)
            for j in range(t + 1, n):
                if D[t][j]:
                    a, b = D[t][t], D[t][j]
                    g, x, y = (abs(a), a // abs(a), 0) if b % a == 0 else xgcd(a, b)
                    col_comb(D, t, j, x, y, -b // g, a // g)
                    col_comb(T, t, j, x, y, -b // g, a // g)
                    done = False
            if not done:
                continue
            # enforce divisibility into the rest of the block
            p = D[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            i, _ = bad
            D[t] = [a + b for a, b in zip(D[t], D[i])]
            S[t] = [a + b for a, b in zip(S[t], S[i])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            S[t] = [-a for a in S[t]]
        t += 1
    return [tuple(r) for r in D], [tuple(r) for r in S], [tuple(r) for r in T]


def invariant_factors(A: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero diagonal entries of the Smith form of A."""
    if not A:
        return []
    D, _, _ = smith(A, len(A), ncols)
    return [D[i][i] for i in range(min(len(D), ncols)) if D[i][i]]


def quotient_projection(rows: Sequence[Sequence[int]], ncols: int):
    """Integer surjection Z^ncols -> Z^k killing the saturation of span(rows).

    Returns (P, torsion) where P is a k x ncols matrix acting on column
    vectors and torsion lists the invariant factors > 1 of rows inside
    their saturation, i.e. the torsion of Z^ncols / span(rows).
    """
    rows = [r for r in rows if any(r)]
    if not rows:
        return identity(ncols), []
    D, _, T = smith(rows, len(rows), ncols)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    torsion = [D[i][i] for i in range(r) if D[i][i] > 1]
    # x -> (x^T T)[r:] ; as a matrix on column vectors the rows are columns of T
    Tt = transpose(T)
    return [Tt[j] for j in range(r, ncols)], torsion


def rational_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Some rational x with A @ x = b (A given by rows), or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [v - f * w for v, w in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][n]
    return x


def in_rational_span(rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [tuple(v)], len(v)) == rank(rows, len(v))


def box_points(diag: Sequence[int]):
    return product(*(range(d) for d in diag))
