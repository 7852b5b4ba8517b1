"""Monoid homomorphisms and their classification."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import ResourceExhausted, ValidationError
from . import cone
from . import lattice as lt
from .lattice import Vector
from .monoid import AffineMonoid, Face, once, saturate, smallest_face_containing


@dataclass(frozen=True)
class MonoidMap:
    """A homomorphism given by an integer matrix between ambient lattices.

    ``matrix`` has one row per target coordinate and acts on column vectors.
    """

    source: AffineMonoid
    target: AffineMonoid
    matrix: tuple[Vector, ...]

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)
        if len(M) != self.target.ambient_dim or any(len(r) != self.source.ambient_dim for r in M):
            raise ValidationError(
                f"matrix must be {self.target.ambient_dim} x {self.source.ambient_dim}")
        for g in self.source.generators:
            if not self.target.contains(self(g)):
                raise ValidationError(f"generator {g} maps to {self(g)}, outside the target")

    def __call__(self, v: Sequence[int]) -> Vector:
        if not self.matrix:
            return ()
        return lt.matvec(self.matrix, v)

    def then(self, other: MonoidMap) -> MonoidMap:
        """Composite ``other o self``."""
        if other.source != self.target:
            raise ValidationError("maps are not composable")
        M = lt.matmul(other.matrix, self.matrix) if other.matrix else ()
        if not M and other.target.ambient_dim:
            M = tuple((0,) * self.source.ambient_dim for _ in range(other.target.ambient_dim))
        return MonoidMap(self.source, other.target, tuple(M))

    @once
    def gp_injective(self) -> bool:
        basis = self.source.geometry.basis
        return lt.rank([self(b) for b in basis], self.target.ambient_dim) == len(basis)

    def image_monoid(self) -> AffineMonoid:
        return AffineMonoid(self.target.ambient_dim, tuple(self(g) for g in self.source.generators))


def identity_map(P: AffineMonoid) -> MonoidMap:
    return MonoidMap(P, P, tuple(lt.identity(P.ambient_dim)))


def scalar_map(P: AffineMonoid, n: int) -> MonoidMap:
    """Multiplication by n on P."""
    return MonoidMap(P, P, tuple(lt.scale(n, r) for r in lt.identity(P.ambient_dim)))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a possibly bounded decision.

    holds is True/False when decided and None when the search was
    inconclusive.  A True verdict with a bound means no counterexample
    exists among elements of degree at most ``bound``.
    """

    holds: bool | None
    bound: int | None = None
    witness: tuple | None = None

    @property
    def undecided(self) -> bool:
        return self.holds is None

    def __str__(self):
        if self.holds is None:
            return f"undecided at bound {self.bound}"
        s = "true" if self.holds else "false"
        if self.bound is not None:
            s += f" (bound {self.bound})"
        if self.witness is not None:
            s += f" witness {self.witness}"
        return s


@dataclass(frozen=True)
class MapClassification:
    local: bool
    exact: Verdict
    kummer: bool
    l_kummer: bool | None
    primes: tuple[int, ...] | None
    integral: Verdict
    saturated: Verdict
    bound: int

    def as_dict(self) -> dict:
        return {
            "local": self.local,
            "exact": self.exact,
            "kummer": self.kummer,
            "l_kummer": self.l_kummer,
            "primes": self.primes,
            "integral": self.integral,
            "saturated": self.saturated,
            "bound": self.bound,
        }


def default_bound(h: MonoidMap) -> int:
    vals = [abs(x) for g in h.source.generators for x in g]
    vals += [abs(x) for g in h.target.generators for x in g]
    vals += [abs(x) for g in h.source.generators for x in h(g)]
    dim = max(h.source.ambient_dim, h.target.ambient_dim, 1)
    return 2 * max(vals + [1]) * dim


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def is_local(h: MonoidMap) -> bool:
    P, Q = h.source, h.target
    return all(P.is_unit(g) for g in P.generators if Q.is_unit(h(g)))


def is_exact(h: MonoidMap, bound: int | None = None) -> Verdict:
    """P equals the preimage of Q in P^gp."""
    P, Q = h.source, h.target
    gP, gQ = P.geometry, Q.geometry
    cols = [gQ.to_coords(h(b)) for b in gP.basis]
    A = [tuple(lt.dot(n, c) for c in cols) for n in gQ.facets]
    r = gP.rank
    gens = cone.cone_generators(A, r) if r else []
    pts = cone.lattice_cone_generators(gens, r) if r else []
    ambient = [gP.to_ambient(c) for c in pts]
    if Q.is_saturated:
        for x in ambient:
            if not P.contains(x):
                return Verdict(False, witness=(x,))
        return Verdict(True)
    B = bound if bound is not None else default_bound(h)
    E = AffineMonoid(P.ambient_dim, tuple(ambient))
    for x in E.elements_up_to(B):
        if Q.contains(h(x)) and not P.contains(x):
            return Verdict(False, B, witness=(x,))
    return Verdict(True, B)


def is_kummer(h: MonoidMap) -> bool:
    if not h.gp_injective:
        return False
    M = h.image_monoid()
    return all(M.in_cone(q) for q in h.target.generators)


def _smooth(n: int, primes: Iterable[int]) -> bool:
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def is_l_kummer(h: MonoidMap, primes: Iterable[int], search: int = 4096) -> bool:
    """Kummer with n Q contained in h(P) for some integer n built from ``primes``."""
    primes = tuple(primes)
    if not is_kummer(h):
        return False
    Q = h.target
    gQ = Q.geometry
    image = [gQ.to_coords(h(b)) for b in h.source.geometry.basis]
    factors = lt.invariant_factors(image, gQ.rank) if image else []
    index = 1
    for d in factors:
        index *= d
    if len(factors) < gQ.rank or not _smooth(index, primes):
        return False
    M = h.image_monoid()
    candidates = [k for k in range(1, search + 1) if _smooth(k, primes)]
    return all(any(M.contains(lt.scale(k, q)) for k in candidates) for q in Q.generators)


def _below(h: MonoidMap, q: Vector, bound: int):
    """Elements g of P with q - h(g) in Q, and whether the list is complete."""
    P, Q = h.source, h.target
    if Q.is_sharp and P.is_sharp:
        w = [Q.degree(h(g)) for g in P.generators]
        if all(x > 0 for x in w):
            cands = P.elements_by_weight(w, Q.degree(q))
            return [g for g in cands if Q.contains(lt.sub(q, h(g)))], True
    return [g for g in P.elements_up_to(bound) if Q.contains(lt.sub(q, h(g)))], False


def is_integral(h: MonoidMap, bound: int | None = None) -> Verdict:
    """Bounded check of the equational integrality criterion.

    For q1 + h(p1) = q2 + h(p2) there must be g in Q and g1, g2 in P with
    q1 = g + h(g1), q2 = g + h(g2) and p1 + g1 = p2 + g2.
    """
    P, Q = h.source, h.target
    B = bound if bound is not None else default_bound(h)
    Pel = P.elements_up_to(B)
    Qel = Q.elements_up_to(B)
    Qset = set(Qel)
    memo: dict = {}
    undecided = None
    for q1 in Qel:
        for p1 in Pel:
            hp1 = h(p1)
            for p2 in Pel:
                if p1 == p2:
                    continue
                q2 = lt.sub(lt.add(q1, hp1), h(p2))
                if q2 not in Qset:
                    continue
                key = (q1, lt.sub(p1, p2))
                if key not in memo:
                    memo[key] = _integral_witness(h, q1, p1, p2, B)
                found, complete = memo[key]
                if found:
                    continue
                if complete:
                    return Verdict(False, B, witness=(q1, q2, p1, p2))
                if undecided is None:
                    undecided = (q1, q2, p1, p2)
    if undecided is not None:
        return Verdict(None, B, witness=undecided)
    return Verdict(True, B)


def _integral_witness(h, q1, p1, p2, B):
    # g2 = p1 - p2 + g1 is forced, and then q2 = g + h(g2) holds automatically
    g1s, complete = _below(h, q1, B)
    d = lt.sub(p1, p2)
    if any(h.source.contains(lt.add(d, g1)) for g1 in g1s):
        return True, True
    return False, complete


def is_saturated_map(h: MonoidMap, bound: int | None = None,
                     integral: Verdict | None = None) -> Verdict:
    """Prime-divisibility saturation criterion, searched over elements of degree at most the bound.

    For a in P, b in Q and a prime p with h(a) | p b there must be c in P
    with a | p c and h(c) | b.
    """
    P, Q = h.source, h.target
    B = bound if bound is not None else default_bound(h)
    integral = integral if integral is not None else is_integral(h, B)
    if integral.holds is False:
        return Verdict(False, B, witness=("not integral",) + tuple(integral.witness or ()))
    Pel = P.elements_up_to(B)
    Qel = Q.elements_up_to(B)
    primes = primes_up_to(max(2, B))
    undecided = integral.witness if integral.holds is None else None
    for a in Pel:
        ha = h(a)
        for b in Qel:
            cands = None
            for p in primes:
                if not Q.contains(lt.sub(lt.scale(p, b), ha)):
                    continue
                if cands is None:
                    cands = _below(h, b, B)
                cs, complete = cands
                if any(P.contains(lt.sub(lt.scale(p, c), a)) for c in cs):
                    continue
                if complete:
                    return Verdict(False, B, witness=(a, b, p))
                if undecided is None:
                    undecided = (a, b, p)
    if undecided is not None:
        return Verdict(None, B, witness=undecided)
    return Verdict(True, B)


def classify_map(h: MonoidMap, bound: int | None = None,
                 primes: Iterable[int] | None = None) -> MapClassification:
    B = bound if bound is not None else default_bound(h)
    integral = is_integral(h, B)
    saturated = is_saturated_map(h, B, integral)
    kummer = is_kummer(h)
    primes = tuple(sorted(set(primes))) if primes is not None else None
    return MapClassification(
        local=is_local(h),
        exact=is_exact(h, B),
        kummer=kummer,
        l_kummer=is_l_kummer(h, primes) if primes is not None else None,
        primes=primes,
        integral=integral,
        saturated=saturated,
        bound=B,
    )


@dataclass(frozen=True)
class Pushout:
    monoid: AffineMonoid
    from_left: MonoidMap
    from_right: MonoidMap
    torsion: tuple[int, ...]


def pushout_with_maps(f: MonoidMap, g: MonoidMap, limit: int = 200_000) -> Pushout:
    """Saturated amalgamated sum of f: P -> Q and g: P -> Q'.

    The result lives in the torsion-free quotient of Q^gp + Q'^gp by the
    relations (f(x), -g(x)); ``torsion`` records the invariant factors that
    this model drops (empty when the honest envelope is torsion-free).
    """
    if f.source != g.source:
        raise ValidationError("pushout needs maps out of the same monoid")
    P, Q, Qp = f.source, f.target, g.target
    d, e = Q.ambient_dim, Qp.ambient_dim
    rels = [tuple(f(b)) + lt.neg(g(b)) for b in P.geometry.basis]
    proj, _ = lt.quotient_projection(rels, d + e)
    k = len(proj)
    left = tuple(row[:d] for row in proj)
    right = tuple(row[d:] for row in proj)
    gens = [lt.matvec(left, q) if k else () for q in Q.generators]
    gens += [lt.matvec(right, q) if k else () for q in Qp.generators]
    M = saturate(AffineMonoid(k, tuple(gens)), limit=limit)
    gQ, gQp = Q.geometry, Qp.geometry
    rel_coords = [tuple(gQ.to_coords(f(b))) + lt.neg(gQp.to_coords(g(b))) for b in P.geometry.basis]
    _, torsion = lt.quotient_projection(rel_coords, gQ.rank + gQp.rank)
    return Pushout(M, MonoidMap(Q, M, left), MonoidMap(Qp, M, right), tuple(torsion))


def pushout(f: MonoidMap, g: MonoidMap) -> AffineMonoid:
    return pushout_with_maps(f, g).monoid


def kummer_face_transport(h: MonoidMap, F: Face) -> Face:
    """The face F_Q of the target: the saturation of h(F)."""
    if not is_kummer(h):
        raise ValidationError("face transport needs a Kummer map")
    if F.parent != h.source:
        raise ValidationError("face is not a face of the source")
    return smallest_face_containing(h.target, [h(g) for g in F.generators])


def restrict_to_face(h: MonoidMap, Fq: Face) -> MonoidMap:
    """h restricted to the preimage face F = h^{-1}(F') -> F'."""
    P = h.source
    S = frozenset(i for i, g in enumerate(P.generators) if Fq.contains(h(g)))
    F = Face(P, S)
    return MonoidMap(F.monoid(), Fq.monoid(), h.matrix)


def saturation_index(h: MonoidMap, cutoff: int = 64, bound: int | None = None) -> int:
    """Least n such that the base change of h along multiplication by n is saturated."""
    B = bound if bound is not None else default_bound(h)
    integral = is_integral(h, B)
    if integral.holds is False:
        raise ValidationError(f"map is not integral: witness {integral.witness}")
    P = h.source
    for n in range(1, cutoff + 1):
        po = pushout_with_maps(h, scalar_map(P, n))
        base_changed = po.from_right
        if is_saturated_map(base_changed, B).holds:
            return n
    raise ResourceExhausted(f"no saturating base change with n <= {cutoff}")
