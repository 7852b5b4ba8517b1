"""Fine monoids inside integer lattices, their faces and envelopes."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import wraps
from typing import Iterable, Sequence

from ..errors import TorsionError, ValidationError
from . import cone
from . import lattice as lt
from .lattice import Vector

_LOCK = threading.RLock()


def once(fn):
    """Lazily computed, cached attribute; computed at most once per object."""
    slot = "_once_" + fn.__name__

    @wraps(fn)
    def getter(self):
        d = self.__dict__
        if slot in d:
            return d[slot]
        with _LOCK:
            if slot not in d:
                object.__setattr__(self, slot, fn(self))
        return d[slot]

    return property(getter)


@dataclass(frozen=True)
class LatticeGroup:
    """A subgroup of Z^ambient_dim, stored by its Hermite-reduced basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(lt.hnf(self.basis, self.ambient_dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return lt.in_lattice(self.basis, v)

    def coords(self, v: Sequence[int]) -> Vector | None:
        return lt.lattice_coords(self.basis, v)

    def is_sublattice_of(self, other: LatticeGroup) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __str__(self):
        rows = "; ".join(" ".join(map(str, b)) for b in self.basis)
        return f"Z^{self.ambient_dim} > <{rows}> (rank {self.rank})"


class _Geometry:
    """Cone and lattice data of a finite generating set, in envelope coordinates."""

    def __init__(self, dim: int, gens: Sequence[Vector]):
        self.dim = dim
        self.basis = lt.hnf(gens, dim)
        self.rank = len(self.basis)
        self.coords = [lt.lattice_coords(self.basis, g) for g in gens]
        self.facets = cone.facets(self.coords, self.rank)
        self.grading = tuple(sum(col) for col in zip(*self.facets)) if self.facets else (0,) * self.rank
        self.unit_mask = [lt.dot(self.grading, c) == 0 for c in self.coords]
        self.unit_coords_hnf = lt.hnf([c for c, u in zip(self.coords, self.unit_mask) if u], self.rank)
        self.unit_ambient_hnf = lt.hnf([g for g, u in zip(gens, self.unit_mask) if u], dim)
        self.steps = [c for c, u in zip(self.coords, self.unit_mask) if not u]

    def to_coords(self, v: Sequence[int]) -> Vector | None:
        return lt.lattice_coords(self.basis, v)

    def to_ambient(self, c: Sequence[int]) -> Vector:
        out = [0] * self.dim
        for ci, b in zip(c, self.basis):
            if ci:
                out = [o + ci * x for o, x in zip(out, b)]
        return tuple(out)

    def in_cone(self, c: Sequence[int]) -> bool:
        return all(lt.dot(n, c) >= 0 for n in self.facets)

    def member_coords(self, c: Vector) -> bool:
        if not self.in_cone(c):
            return False
        U = self.unit_coords_hnf
        start = lt.reduce_mod(U, c)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            if not any(x):
                return True
            for s in self.steps:
                y = lt.sub(x, s)
                if not self.in_cone(y):
                    continue
                y = lt.reduce_mod(U, y)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def member(self, v: Sequence[int]) -> bool:
        c = self.to_coords(v)
        return c is not None and self.member_coords(c)


@dataclass(frozen=True)
class AffineMonoid:
    """The submonoid of Z^ambient_dim generated by finitely many vectors.

    Generators are canonicalized on construction: unit lattice basis vectors
    and their negatives, then the irreducible non-units reduced modulo the
    units.  Two instances are equal iff they describe the same monoid.
    """

    ambient_dim: int
    generators: tuple[Vector, ...] = ()

    def __post_init__(self):
        d = self.ambient_dim
        raw = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != d:
                raise ValidationError(f"generator {g} is not in Z^{d}")
            if any(g) and g not in raw:
                raw.append(g)
        geom = _Geometry(d, raw)
        canon = set()
        for b in geom.unit_ambient_hnf:
            canon.add(tuple(b))
            canon.add(lt.neg(b))
        reps = sorted({lt.reduce_mod(geom.unit_ambient_hnf, g)
                       for g, u in zip(raw, geom.unit_mask) if not u})
        for g in reps:
            if not any(h != g and geom.member(lt.sub(g, h)) for h in reps):
                canon.add(g)
        gens = tuple(sorted(canon))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_geom", _Geometry(d, gens) if gens != tuple(raw) else geom)

    # -- basic structure -------------------------------------------------

    @property
    def geometry(self) -> _Geometry:
        return self._geom

    @property
    def rank(self) -> int:
        return self._geom.rank

    def contains(self, v: Sequence[int]) -> bool:
        return self._geom.member(v)

    __contains__ = contains

    def in_envelope(self, v: Sequence[int]) -> bool:
        return self._geom.to_coords(v) is not None

    def in_cone(self, v: Sequence[int]) -> bool:
        """Membership in the rational cone (v must lie in the envelope's span)."""
        if not lt.in_rational_span(self._geom.basis, v):
            return False
        c = lt.rational_solve(lt.transpose(self._geom.basis, self.ambient_dim), v)
        return all(sum(n_i * c_i for n_i, c_i in zip(n, c)) >= 0 for n in self._geom.facets)

    def degree(self, v: Sequence[int]) -> int:
        """Value of a grading that vanishes exactly on units and is positive elsewhere."""
        c = self._geom.to_coords(v)
        if c is None:
            raise ValidationError(f"{v} is not in the group envelope")
        return lt.dot(self._geom.grading, c)

    def is_unit(self, v: Sequence[int]) -> bool:
        return self.contains(v) and self.contains(lt.neg(v))

    @once
    def is_sharp(self) -> bool:
        return not self._geom.unit_ambient_hnf

    @once
    def is_saturated(self) -> bool:
        return saturate(self) == self

    def elements_up_to(self, bound: int) -> list[Vector]:
        """All sums of at most ``bound`` generators (with repetition)."""
        zero = lt.zero(self.ambient_dim)
        layer = {zero}
        seen = {zero}
        for _ in range(bound):
            nxt = set()
            for x in layer:
                for g in self.generators:
                    y = lt.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.add(y)
            layer = nxt
        return sorted(seen)

    def elements_by_weight(self, weights: Sequence[int], max_weight: int) -> list[Vector]:
        """Sums of generators whose total weight is at most max_weight.

        Every generator must carry a positive weight, which keeps this finite.
        """
        if any(w <= 0 for w in weights):
            raise ValidationError("weights must be positive")
        zero = lt.zero(self.ambient_dim)
        best = {zero: 0}
        stack = [zero]
        while stack:
            x = stack.pop()
            wx = best[x]
            for g, w in zip(self.generators, weights):
                if wx + w > max_weight:
                    continue
                y = lt.add(x, g)
                if y not in best or best[y] > wx + w:
                    best[y] = wx + w
                    stack.append(y)
        return sorted(best)

    def __str__(self):
        gens = ", ".join("(" + " ".join(map(str, g)) + ")" for g in self.generators)
        return f"<{gens}> in Z^{self.ambient_dim}"


def free_monoid(n: int) -> AffineMonoid:
    return AffineMonoid(n, tuple(lt.identity(n)))


def group_envelope(P: AffineMonoid) -> LatticeGroup:
    return LatticeGroup(P.ambient_dim, tuple(P.geometry.basis))


def units(P: AffineMonoid) -> LatticeGroup:
    return LatticeGroup(P.ambient_dim, tuple(P.geometry.unit_ambient_hnf))


def sharpening_projection(P: AffineMonoid) -> list[Vector]:
    """Integer matrix realizing P^gp -> P^gp / P^* inside a free lattice."""
    U = P.geometry.unit_ambient_hnf
    proj, _ = lt.quotient_projection(U, P.ambient_dim)
    # torsion of P^gp/P^*: units must be saturated inside the envelope
    if U:
        env = P.geometry.basis
        ucoords = [lt.lattice_coords(env, u) for u in U]
        _, torsion = lt.quotient_projection(ucoords, len(env))
        if torsion:
            raise TorsionError(f"P^gp/P^* has torsion {torsion}")
    return proj


def sharpen(P: AffineMonoid) -> AffineMonoid:
    proj = sharpening_projection(P)
    return AffineMonoid(len(proj), tuple(lt.matvec(proj, g) for g in P.generators))


def saturate(P: AffineMonoid, limit: int = 200_000) -> AffineMonoid:
    """Envelope points in the rational cone of P, as a finitely generated monoid."""
    geom = P.geometry
    pts = cone.lattice_cone_generators(geom.coords, geom.rank, limit=limit)
    return AffineMonoid(P.ambient_dim, tuple(geom.to_ambient(c) for c in pts))


@dataclass(frozen=True)
class Face:
    """A face of a monoid, given by the parent generators it contains."""

    parent: AffineMonoid
    generator_subset: frozenset[int]

    def __post_init__(self):
        S = frozenset(self.generator_subset)
        object.__setattr__(self, "generator_subset", S)
        n = len(self.parent.generators)
        if any(i < 0 or i >= n for i in S):
            raise ValidationError(f"generator index out of range in {sorted(S)}")
        if face_closure(self.parent, S) != S:
            raise ValidationError(f"generators {sorted(S)} do not span a face of {self.parent}")

    @property
    def generators(self) -> tuple[Vector, ...]:
        return tuple(self.parent.generators[i] for i in sorted(self.generator_subset))

    def monoid(self) -> AffineMonoid:
        return AffineMonoid(self.parent.ambient_dim, self.generators)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.parent.contains(v):
            return False
        c = self.parent.geometry.to_coords(v)
        return all(lt.dot(n, c) == 0 for n in _supporting_facets(self.parent, self.generator_subset))

    def __le__(self, other: Face) -> bool:
        return self.generator_subset <= other.generator_subset

    def __lt__(self, other: Face) -> bool:
        return self.generator_subset < other.generator_subset

    def label(self) -> str:
        return "{" + ",".join(map(str, sorted(self.generator_subset))) + "}"


def _incidence(P: AffineMonoid) -> list[frozenset[int]]:
    geom = P.geometry
    return [frozenset(i for i, c in enumerate(geom.coords) if lt.dot(n, c) == 0)
            for n in geom.facets]


def _supporting_facets(P: AffineMonoid, S: frozenset[int]) -> list[Vector]:
    geom = P.geometry
    return [n for n, inc in zip(geom.facets, _incidence(P)) if S <= inc]


def face_closure(P: AffineMonoid, S: Iterable[int]) -> frozenset[int]:
    """Generator set of the smallest face containing the given generators."""
    S = frozenset(S)
    out = frozenset(range(len(P.generators)))
    for inc in _incidence(P):
        if S <= inc:
            out &= inc
    return out


def smallest_face_containing(P: AffineMonoid, vectors: Iterable[Sequence[int]]) -> Face:
    """Smallest face of P whose cone contains the given vectors of the envelope."""
    geom = P.geometry
    cs = [geom.to_coords(v) for v in vectors]
    if any(c is None for c in cs):
        raise ValidationError("vectors must lie in the group envelope")
    S = frozenset(range(len(P.generators)))
    for n, inc in zip(geom.facets, _incidence(P)):
        if all(lt.dot(n, c) == 0 for c in cs):
            S &= inc
    return Face(P, S)


@dataclass(frozen=True)
class FacePoset:
    faces: tuple[Face, ...]
    order: tuple[tuple[bool, ...], ...]

    def __len__(self):
        return len(self.faces)

    def index(self, face: Face) -> int:
        return self.faces.index(face)

    @property
    def bottom(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]


def face_poset(P: AffineMonoid) -> FacePoset:
    incs = set(_incidence(P))
    everything = frozenset(range(len(P.generators)))
    faces = {everything} | incs
    frontier = set(incs)
    while frontier:
        new = set()
        for a in frontier:
            for b in incs:
                c = a & b
                if c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    ordered = sorted(faces, key=lambda s: (len(s), sorted(s)))
    fs = tuple(Face(P, s) for s in ordered)
    order = tuple(tuple(a <= b for b in ordered) for a in ordered)
    return FacePoset(fs, order)


def localize(P: AffineMonoid, F: Face) -> AffineMonoid:
    """F^{-1}P: the monoid generated by P and the negatives of F."""
    if F.parent != P:
        raise ValidationError("face belongs to a different monoid")
    return AffineMonoid(P.ambient_dim, P.generators + tuple(lt.neg(g) for g in F.generators))


def direct_sum(P: AffineMonoid, Q: AffineMonoid) -> AffineMonoid:
    d, e = P.ambient_dim, Q.ambient_dim
    gens = [tuple(g) + (0,) * e for g in P.generators] + [(0,) * d + tuple(g) for g in Q.generators]
    return AffineMonoid(d + e, tuple(gens))
