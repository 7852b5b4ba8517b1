"""Strata of chart-described fibers and their cospecialization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .monoid import AffineMonoid, Face, MonoidMap, face_poset, is_kummer, kummer_face_transport
from .monoid.monoid import smallest_face_containing


@dataclass(frozen=True)
class LogPointChart:
    M: AffineMonoid

    def __post_init__(self):
        if not self.M.is_sharp:
            raise ValidationError("the monoid of a log point must be sharp")


@dataclass(frozen=True)
class FiberChartDatum:
    base: LogPointChart
    total: AffineMonoid
    structure: MonoidMap

    def __post_init__(self):
        if self.structure.source != self.base.M or self.structure.target != self.total:
            raise ValidationError("structure map must go from the base monoid to the total monoid")
        if not self.total.is_saturated:
            raise ValidationError("total monoid must be saturated")


@dataclass(frozen=True)
class StrataPoset:
    """Faces over a base point, ordered by reverse inclusion."""

    faces: tuple[Face, ...]
    leq: tuple[tuple[bool, ...], ...]
    ranks: tuple[int, ...]

    def __len__(self):
        return len(self.faces)

    def index(self, G: Face) -> int:
        return self.faces.index(G)

    def labels(self) -> list[str]:
        return [G.label() for G in self.faces]

    def minimal(self) -> list[int]:
        n = len(self)
        return [i for i in range(n) if not any(self.leq[j][i] and j != i for j in range(n))]

    def relations(self):
        n = len(self)
        return [(i, j) for i in range(n) for j in range(n) if i != j and self.leq[i][j]]

    def to_digraph(self):
        import networkx as nx
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from(self.relations())
        return g


def preimage_face(phi: MonoidMap, G: Face) -> Face:
    P = phi.source
    return Face(P, frozenset(i for i, g in enumerate(P.generators) if G.contains(phi(g))))


def bottom_face(P: AffineMonoid) -> Face:
    return face_poset(P).bottom


def strata_over(phi: MonoidMap, F: Face) -> StrataPoset:
    """Faces G of the target whose preimage is F."""
    if F.parent != phi.source:
        raise ValidationError("base face belongs to another monoid")
    Q = phi.target
    fs = [G for G in face_poset(Q).faces if preimage_face(phi, G) == F]
    leq = tuple(tuple(b.generator_subset <= a.generator_subset for b in fs) for a in fs)
    rq = Q.rank
    ranks = tuple(rq - G.monoid().rank for G in fs)
    return StrataPoset(tuple(fs), leq, ranks)


def strata_of(d: FiberChartDatum) -> StrataPoset:
    return strata_over(d.structure, bottom_face(d.base.M))


@dataclass(frozen=True)
class StrataMap:
    source: StrataPoset
    target: StrataPoset
    mapping: tuple[int, ...]

    def is_monotone(self) -> bool:
        return all(self.target.leq[self.mapping[i]][self.mapping[j]]
                   for i, j in self.source.relations())

    def preserves_minimal(self) -> bool:
        mins = set(self.target.minimal())
        return all(self.mapping[i] in mins for i in self.source.minimal())

    def is_isomorphism(self) -> bool:
        n = len(self.source)
        if len(self.target) != n or len(set(self.mapping)) != n:
            return False
        return all(self.source.leq[i][j] == self.target.leq[self.mapping[i]][self.mapping[j]]
                   for i in range(n) for j in range(n))

    def then(self, other: StrataMap) -> StrataMap:
        return StrataMap(self.source, other.target, tuple(other.mapping[i] for i in self.mapping))


def kummer_strata_transport(d: FiberChartDatum, d2: FiberChartDatum, h: MonoidMap) -> StrataMap:
    """Face transport along a Kummer map over the base, restricted to strata."""
    if h.source != d.total or h.target != d2.total:
        raise ValidationError("map must go between the two total monoids")
    if d.base.M != d2.base.M:
        raise ValidationError("both data must live over the same log point")
    if not is_kummer(h):
        raise ValidationError("strata transport needs a Kummer map")
    for g in d.base.M.generators:
        if h(d.structure(g)) != d2.structure(g):
            raise ValidationError("map is not compatible with the structure maps")
    s, t = strata_of(d), strata_of(d2)
    mapping = tuple(t.index(kummer_face_transport(h, G)) for G in s.faces)
    m = StrataMap(s, t, mapping)
    if not m.is_isomorphism():
        raise ValidationError("face transport does not give a poset isomorphism on strata")
    return m


def cospecialize_strata(phi: MonoidMap, F1: Face, F2: Face) -> StrataMap:
    """Str(fiber over F1) -> Str(fiber over F2) for F1 contained in F2.

    F1 is the more special base point.  A stratum G goes to the smallest
    face over F2 containing it, which is the unique maximal stratum over F2
    whose closure contains G.
    """
    if not F1.generator_subset <= F2.generator_subset:
        raise ValidationError("cospecialization needs F1 contained in F2 (F1 the special point)")
    s, t = strata_over(phi, F1), strata_over(phi, F2)
    image_F2 = [phi(g) for g in F2.generators]
    mapping = []
    for G in s.faces:
        H = smallest_face_containing(phi.target, list(G.generators) + image_F2)
        if preimage_face(phi, H) != F2:
            raise ValidationError(f"stratum {G.label()} has no generization over {F2.label()}")
        mapping.append(t.index(H))
    m = StrataMap(s, t, tuple(mapping))
    if not m.is_monotone() or not m.preserves_minimal():
        raise ValidationError("cospecialization map is not monotone and minimality preserving")
    return m


def faces_by_generators(P: AffineMonoid, indices: Sequence[int]) -> Face:
    return Face(P, frozenset(indices))
