"""Rational polyhedral cones in lattice coordinates.

Everything here works in a full-rank coordinate lattice Z^r: callers first
express generators in a basis of the lattice they span.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Sequence

from ..errors import ResourceExhausted
from . import lattice as lt
from .lattice import Vector


def facets(gens: Sequence[Vector], r: int) -> list[Vector]:
    """Primitive inward normals of the facets of cone(gens) in Q^r.

    The generators are assumed to span Q^r.  A cone equal to the whole
    space has no facets.
    """
    gens = [g for g in gens if any(g)]
    if r == 0:
        return []
    found: set[Vector] = set()
    for sub in combinations(range(len(gens)), r - 1):
        rows = [gens[i] for i in sub]
        if lt.rank(rows, r) != r - 1:
            continue
        ker = lt.right_kernel(rows, r)
        if len(ker) != 1:
            continue
        n = lt.primitive(ker[0])
        vals = [lt.dot(n, g) for g in gens]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            n = lt.neg(n)
        else:
            continue
        tight = [g for g in gens if lt.dot(n, g) == 0]
        if lt.rank(tight, r) == r - 1:
            found.add(n)
    return sorted(found)


def cone_generators(A: Sequence[Vector], r: int) -> list[Vector]:
    """Generators of the cone {x in Q^r : A x >= 0} (lineality included)."""
    A = [a for a in A if any(a)]
    lin = lt.right_kernel(A, r) if A else lt.identity(r)
    out = [tuple(v) for v in lin] + [lt.neg(v) for v in lin]
    rk = lt.rank(A, r) if A else 0
    if rk == 0:
        return sorted(set(out))
    rays = set()
    for sub in combinations(range(len(A)), rk - 1):
        rows = [A[i] for i in sub]
        if lt.rank(rows, r) != rk - 1:
            continue
        for v in lt.right_kernel(rows, r):
            vals = lt.matvec(A, v)
            if not any(vals):
                continue
            if all(x >= 0 for x in vals):
                rays.add(lt.primitive(v))
            elif all(x <= 0 for x in vals):
                rays.add(lt.primitive(lt.neg(v)))
            break
    return sorted(set(out) | rays)


def parallelepiped_points(basis: Sequence[Vector], r: int) -> list[Vector]:
    """Lattice points sum t_i b_i with 0 <= t_i < 1 for a basis of Q^r."""
    H = lt.hnf(basis, r)
    diag = [H[i][i] for i in range(r)]
    # rational inverse of the basis matrix, rows as vectors: x = t B
    B = [list(map(Fraction, b)) for b in basis]
    inv = _inverse(B, r)
    pts = set()
    for x in lt.box_points(diag):
        t = [sum(Fraction(x[i]) * inv[i][j] for i in range(r)) for j in range(r)]
        t = [ti - floor(ti) for ti in t]
        p = [sum(t[i] * B[i][j] for i in range(r)) for j in range(r)]
        assert all(v.denominator == 1 for v in p)
        pts.add(tuple(int(v) for v in p))
    return sorted(pts)


def _inverse(B, r):
    M = [row[:] + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(B)]
    for c in range(r):
        p = next(i for i in range(c, r) if M[i][c] != 0)
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(r):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [v - f * w for v, w in zip(M[i], M[c])]
    return [row[r:] for row in M]


def lattice_cone_generators(gens: Sequence[Vector], r: int, limit: int = 200_000) -> list[Vector]:
    """A generating set of the monoid Z^r intersected with cone(gens).

    Every lattice point of the cone lies in the cone of some basis drawn
    from the generators; subtracting integer parts leaves a point of that
    basis' half-open parallelepiped, so generators plus those points
    suffice.  ``limit`` caps the total parallelepiped volume enumerated.
    """
    gens = sorted({tuple(g) for g in gens if any(g)})
    out = set(gens)
    volume = 0
    for sub in combinations(gens, r):
        if lt.rank(list(sub), r) != r:
            continue
        D = lt.invariant_factors(list(sub), r)
        vol = 1
        for d in D:
            vol *= d
        volume += vol
        if volume > limit:
            raise ResourceExhausted(f"parallelepiped enumeration exceeded {limit} points")
        if vol > 1:
            out.update(p for p in parallelepiped_points(list(sub), r) if any(p))
    return sorted(out)
