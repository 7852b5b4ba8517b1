"""Brute-force reference implementations used to freeze expected values.

Nothing here calls the package's own search code: membership is decided
by a naive recursion on a positive grading and elements are enumerated as
raw generator combinations.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product


class NaiveMonoid:
    """A sharp monoid from generators plus a grading positive on each generator."""

    def __init__(self, gens, grading):
        self.gens = [tuple(g) for g in gens]
        self.w = tuple(grading)
        assert all(self.deg(g) > 0 for g in self.gens), "grading must be positive"
        self.dim = len(self.w)
        self._member = lru_cache(maxsize=None)(self._contains)

    def deg(self, v):
        return sum(a * b for a, b in zip(self.w, v))

    def _contains(self, v):
        if not any(v):
            return True
        if self.deg(v) <= 0:
            return False
        return any(self._member(tuple(a - b for a, b in zip(v, g))) for g in self.gens)

    def contains(self, v):
        return self._member(tuple(v))

    def elements(self, D):
        """Sums of at most D generators."""
        out = {tuple([0] * self.dim)}
        frontier = set(out)
        for _ in range(D):
            frontier = {tuple(a + b for a, b in zip(v, g)) for v in frontier for g in self.gens}
            out |= frontier
        return sorted(out)


def apply(matrix, v):
    return tuple(sum(r * x for r, x in zip(row, v)) for row in matrix)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def oracle_integral(P: NaiveMonoid, Q: NaiveMonoid, M, D: int) -> bool:
    """Equational integrality over elements built from at most D generators."""
    Pel, Qel = P.elements(D), Q.elements(D)
    for a1, a2 in product(Pel, Pel):
        for b1 in Qel:
            b2 = sub(add(apply(M, a1), b1), apply(M, a2))
            if not Q.contains(b2):
                continue
            ok = False
            for a3 in Pel:
                b = sub(b1, apply(M, a3))
                if not Q.contains(b):
                    continue
                a4 = sub(add(a1, a3), a2)
                if P.contains(a4) and add(apply(M, a4), b) == b2:
                    ok = True
                    break
            if not ok:
                return False
    return True


def oracle_saturated(P: NaiveMonoid, Q: NaiveMonoid, M, D: int, primes=(2, 3, 5, 7)) -> bool:
    """Integral plus the divisibility criterion, exhaustively up to D generators."""
    if not oracle_integral(P, Q, M, D):
        return False
    Pel, Qel = P.elements(D), Q.elements(D)
    for a in Pel:
        ha = apply(M, a)
        for b in Qel:
            for p in primes:
                if not Q.contains(sub(tuple(p * x for x in b), ha)):
                    continue
                if not any(Q.contains(sub(b, apply(M, c))) and P.contains(sub(tuple(p * x for x in c), a))
                           for c in Pel):
                    return False
    return True


# -- the category Lambda ---------------------------------------------------------

def falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def hom_count(m, n) -> int:
    """Morphisms m -> n counted from the definition: (J, f, alpha)."""
    mw = [] if m == (0,) else list(m)
    nw = [] if n == (0,) else list(n)
    if not nw:
        return 1
    total = 0
    for r in range(len(mw) + 1):
        for J in combinations(range(len(mw)), r):
            for img in permutations(range(len(nw)), r):
                if any(mw[j] > nw[l] for j, l in zip(J, img)):
                    continue
                c = 1
                for l in range(len(nw)):
                    if l in img:
                        j = J[img.index(l)]
                        c *= falling(nw[l] + 1, mw[j] + 1)
                    else:
                        c *= nw[l] + 1
                total += c
    return total


# -- the presheaf of a compact complex, as a colimit of representables ------------

def presheaf_classes(C, m, lam):
    """Union-find on pairs (cell, morphism m -> type) generated by the attachments."""
    nodes = [(x, phi) for x, t in enumerate(C.types) for phi in lam.homs(m, t)]
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (x, iota), (y, keep) in C.attach.items():
        s = lam.canonical_surjection(iota.source, keep)
        for psi in lam.homs(m, iota.source):
            a, b = find((x, lam.compose(iota, psi))), find((y, lam.compose(s, psi)))
            if a != b:
                parent[a] = b
    classes = {}
    for v in nodes:
        classes.setdefault(find(v), []).append(v)
    return list(classes.values())
