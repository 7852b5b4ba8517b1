from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from temperedkit.monoid import lattice as lt


def det(M):
    A = [[Fraction(x) for x in r] for r in M]
    n, d = len(A), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return d


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_decomposition(A):
    m, n = len(A), len(A[0])
    D, S, T = lt.smith(A, m, n)
    assert lt.matmul(lt.matmul(S, A), T) == [tuple(r) for r in D]
    assert abs(det(S)) == 1 and abs(det(T)) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_transform(A):
    n = len(A[0])
    H, U = lt.hnf_with_transform(A, n)
    assert lt.matmul(U, A) == H
    assert abs(det(U)) == 1
    piv = lt.pivots([r for r in H if any(r)])
    assert piv == sorted(set(piv))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_hnf_is_canonical(A, data):
    n = len(A[0])
    B = [list(r) for r in A]
    for _ in range(data.draw(st.integers(0, 6))):
        i = data.draw(st.integers(0, len(B) - 1))
        j = data.draw(st.integers(0, len(B) - 1))
        c = data.draw(st.integers(-3, 3))
        if i != j:
            B[i] = [a + c * b for a, b in zip(B[i], B[j])]
    assert lt.hnf(A, n) == lt.hnf(B, n)


@settings(max_examples=100, deadline=None)
@given(matrices(hi=5), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_membership_and_coordinates(A, coeffs):
    n = len(A[0])
    H = lt.hnf(A, n)
    v = tuple(sum(c * r[k] for c, r in zip(coeffs, A)) for k in range(n))
    assert lt.in_lattice(H, v)
    c = lt.lattice_coords(H, v)
    assert tuple(sum(x * r[k] for x, r in zip(c, H)) for k in range(n)) == v


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernels(A):
    n = len(A[0])
    for v in lt.right_kernel(A, n):
        assert all(x == 0 for x in lt.matvec(A, v))
    assert len(lt.right_kernel(A, n)) == n - lt.rank(A, n)


def test_quotient_projection_torsion():
    P, torsion = lt.quotient_projection([(2, -2)], 2)
    assert torsion == [2]
    assert len(P) == 1 and lt.matvec(P, (1, -1)) == (0,)
    assert lt.invariant_factors([(2, 4), (6, 8)], 2) == [2, 4]


def test_xgcd():
    for a in range(-12, 13):
        for b in range(-12, 13):
            g, x, y = lt.xgcd(a, b)
            assert a * x + b * y == g >= 0
