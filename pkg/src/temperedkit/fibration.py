"""Polystable charts, their polysimplicial sets, and gluing by descent."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import TorsionError, ValidationError
from .monoid import AffineMonoid, Face, MonoidMap, is_kummer, is_l_kummer
from .monoid import lattice as lt
from .poly import lam
from .poly.complex import (Coequalizer, Elem, PolyMorphism, PolysimplicialSet, disjoint_union,
                           glue, offsets, representable)
from .poly.lam import POINT, LambdaMorphism, Obj
from .strata import StrataPoset, preimage_face, strata_over


@dataclass(frozen=True)
class PolystableChart:
    """P plus blocks (n_i, a_i) with T_i0 + ... + T_in_i = a_i."""

    base: AffineMonoid
    blocks: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        blocks = tuple((int(n), tuple(int(x) for x in a)) for n, a in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for n, a in blocks:
            if n < 1:
                raise ValidationError("block sizes must be positive")
            if not self.base.contains(a):
                raise ValidationError(f"block element {a} is not in the base monoid")

    @property
    def ambient_dim(self) -> int:
        return self.base.ambient_dim + sum(n for n, _ in self.blocks)

    def t_vector(self, i: int, j: int) -> tuple[int, ...]:
        """T_ij in the ambient lattice, the last one eliminated through a_i."""
        d = self.base.ambient_dim
        off = d + sum(n for n, _ in self.blocks[:i])
        n, a = self.blocks[i]
        v = [0] * self.ambient_dim
        if j < n:
            v[off + j] = 1
        else:
            v[:d] = a
            for k in range(n):
                v[off + k] = -1
        return tuple(v)

    def embed(self, p: Sequence[int]) -> tuple[int, ...]:
        return tuple(p) + (0,) * (self.ambient_dim - self.base.ambient_dim)


def standard_monoid(c: PolystableChart) -> AffineMonoid:
    gens = [c.embed(g) for g in c.base.generators]
    for i, (n, _) in enumerate(c.blocks):
        gens.extend(c.t_vector(i, j) for j in range(n + 1))
    Q = AffineMonoid(c.ambient_dim, tuple(gens))
    # the eliminated relation lattice is saturated by construction
    rel_rows = []
    d = c.base.ambient_dim
    for i, (n, a) in enumerate(c.blocks):
        row = [0] * (d + sum(m + 1 for m, _ in c.blocks))
        row[:d] = [-x for x in a]
        off = d + sum(m + 1 for m, _ in c.blocks[:i])
        for k in range(n + 1):
            row[off + k] = 1
        rel_rows.append(tuple(row))
    if rel_rows:
        _, torsion = lt.quotient_projection(rel_rows, len(rel_rows[0]))
        if torsion:
            raise TorsionError(f"chart relations produce torsion {torsion}")
    return Q


def structure_map(c: PolystableChart) -> MonoidMap:
    d = c.base.ambient_dim
    rows = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rows += [(0,) * d for _ in range(c.ambient_dim - d)]
    return MonoidMap(c.base, standard_monoid(c), tuple(rows))


def kept_blocks(c: PolystableChart, F: Face) -> list[int]:
    if F.parent != c.base:
        raise ValidationError("face belongs to another monoid")
    return [i for i, (_, a) in enumerate(c.blocks) if not F.contains(a)]


def fiber_cell_type(c: PolystableChart, F: Face) -> Obj:
    kept = kept_blocks(c, F)
    return tuple(c.blocks[i][0] for i in kept) if kept else POINT


def stratum_subsets(c: PolystableChart, F: Face, G: Face) -> tuple[tuple[int, ...], ...]:
    """The face of Sigma_n matching a stratum G: indices j with T_ij not in G."""
    out = []
    for i in kept_blocks(c, F):
        n = c.blocks[i][0]
        out.append(tuple(j for j in range(n + 1) if not G.contains(c.t_vector(i, j))))
    return tuple(out) if out else ((0,),)


@dataclass(frozen=True)
class KetPiece:
    """Charts of a product fibration over one base plus an optional Kummer covering."""

    charts: tuple[PolystableChart, ...]
    covering: MonoidMap | None = None
    primes: tuple[int, ...] | None = None

    def __post_init__(self):
        if not self.charts:
            raise ValidationError("a piece needs at least one chart")
        base = self.charts[0].base
        if any(c.base != base for c in self.charts):
            raise ValidationError("all charts of a piece share the base monoid")
        if self.covering is not None:
            if self.covering.source != standard_monoid(self.charts[0]):
                raise ValidationError("covering must start at the chart monoid")
            if not is_kummer(self.covering):
                raise ValidationError("covering map is not Kummer")
            if self.primes is not None and not is_l_kummer(self.covering, self.primes):
                raise ValidationError(f"covering map is not Kummer for primes {list(self.primes)}")

    @property
    def base(self) -> AffineMonoid:
        return self.charts[0].base

    def cell_type(self, F: Face) -> Obj:
        t = POINT
        for c in self.charts:
            t = lam.concat(t, fiber_cell_type(c, F))
        return t


def c_of_piece(p: KetPiece, F: Face) -> PolysimplicialSet:
    """One stratum component per chart stratum: the representable on the fiber type."""
    return representable(p.cell_type(F))


def piece_strata(p: KetPiece, F: Face) -> StrataPoset:
    if len(p.charts) != 1:
        raise ValidationError("strata of product pieces are not computed chart-locally")
    return strata_over(structure_map(p.charts[0]), F)


def projection_between(t1: Obj, kept1: Sequence[int], kept2: Sequence[int]) -> LambdaMorphism:
    """Canonical surjection forgetting the blocks that stop degenerating."""
    keep = tuple(kept1.index(i) for i in kept2)
    return lam.canonical_surjection(t1, keep)


def _piece_blocks(p: KetPiece, F: Face) -> list[tuple[int, int]]:
    out = []
    for ci, c in enumerate(p.charts):
        out.extend((ci, i) for i in kept_blocks(c, F))
    return out


def piece_projection(p: KetPiece, F1: Face, F2: Face) -> LambdaMorphism:
    return projection_between(p.cell_type(F1), _piece_blocks(p, F1), _piece_blocks(p, F2))


@dataclass(frozen=True)
class Overlap:
    """A double-overlap piece with its maps into two pieces, at the closed point."""

    left: int
    right: int
    piece: KetPiece
    to_left: LambdaMorphism
    to_right: LambdaMorphism


@dataclass(frozen=True)
class DescentDatum:
    pieces: tuple[KetPiece, ...]
    overlaps: tuple[Overlap, ...] = ()

    def __post_init__(self):
        if not self.pieces:
            raise ValidationError("descent datum needs pieces")
        base = self.pieces[0].base
        if any(p.base != base for p in self.pieces) or any(o.piece.base != base for o in self.overlaps):
            raise ValidationError("all pieces live over one base monoid")
        F0 = self.closed_face
        for o in self.overlaps:
            for idx, mor in ((o.left, o.to_left), (o.right, o.to_right)):
                if not 0 <= idx < len(self.pieces):
                    raise ValidationError(f"overlap refers to missing piece {idx}")
                if mor.source != o.piece.cell_type(F0) or mor.target != self.pieces[idx].cell_type(F0):
                    raise ValidationError(f"overlap map {mor} has the wrong types")

    @property
    def base(self) -> AffineMonoid:
        return self.pieces[0].base

    @property
    def closed_face(self) -> Face:
        from .strata import bottom_face
        return bottom_face(self.base)

    def overlap_maps(self, F: Face) -> list[tuple[int, LambdaMorphism, int, LambdaMorphism]]:
        """Overlap maps over the base point F, induced from the closed point."""
        F0 = self.closed_face
        out = []
        for o in self.overlaps:
            pk = piece_projection(o.piece, F0, F)
            maps = []
            for idx, mor in ((o.left, o.to_left), (o.right, o.to_right)):
                pi = piece_projection(self.pieces[idx], F0, F)
                maps.append(lam.factor_through(lam.compose(pi, mor), pk))
            out.append((o.left, maps[0], o.right, maps[1]))
        return out


def c_global_coequalizer(d: DescentDatum, F: Face | None = None) -> Coequalizer:
    F = F if F is not None else d.closed_face
    types = [p.cell_type(F) for p in d.pieces]
    return glue(types, d.overlap_maps(F))


def c_global(d: DescentDatum, F: Face | None = None) -> PolysimplicialSet:
    return c_global_coequalizer(d, F).quotient


def cospecialize_c(d: DescentDatum, F1: Face, F2: Face) -> PolyMorphism:
    """C(fiber over F1) -> C(fiber over F2), F1 contained in F2 (F1 the special point)."""
    if not F1.generator_subset <= F2.generator_subset:
        raise ValidationError("cospecialization needs F1 contained in F2 (F1 the special point)")
    q1, q2 = c_global_coequalizer(d, F1), c_global_coequalizer(d, F2)
    U1, U2 = q1.projection.source, q2.projection.source
    reps1 = [representable(p.cell_type(F1)) for p in d.pieces]
    reps2 = [representable(p.cell_type(F2)) for p in d.pieces]
    off2 = offsets(reps2)
    images = []
    for k, p in enumerate(d.pieces):
        pi = piece_projection(p, F1, F2)
        index = {c: x for x, c in enumerate(reps2[k].maps)}
        for c in reps1[k].maps:
            iota, s = lam.factor(lam.compose(pi, c))
            images.append(q2.projection(Elem(index[iota] + off2[k], c.source, s.J)))
    F = PolyMorphism(U1, q2.quotient, tuple(images))
    return q1.descend(F)


def glued_strata(d: DescentDatum, F: Face | None = None):
    """Strata of the glued fiber: piece strata identified along the overlaps.

    Returns (labels, leq) with labels (piece index, stratum face label).
    """
    F = F if F is not None else d.closed_face
    F0 = d.closed_face
    nodes, index, leq_edges = [], {}, []
    subsets = []
    for k, p in enumerate(d.pieces):
        st = piece_strata(p, F)
        chart = p.charts[0]
        sub = {}
        for a, G in enumerate(st.faces):
            index[(k, a)] = len(nodes)
            nodes.append((k, G.label()))
            sub[stratum_subsets(chart, F, G)] = a
        subsets.append(sub)
        for a, b in st.relations():
            leq_edges.append((index[(k, a)], index[(k, b)]))
    parent = list(range(len(nodes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for o, (i, phi, j, psi) in zip(d.overlaps, d.overlap_maps(F)):
        ost = piece_strata(o.piece, F)
        for G in ost.faces:
            S = stratum_subsets(o.piece.charts[0], F, G)
            a = subsets[i][_image(phi, S)]
            b = subsets[j][_image(psi, S)]
            ra, rb = find(index[(i, a)]), find(index[(j, b)])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in range(len(nodes))})
    rmap = {r: i for i, r in enumerate(roots)}
    n = len(roots)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq_edges:
        leq[rmap[find(a)]][rmap[find(b)]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    labels = [nodes[r] for r in roots]
    return labels, tuple(tuple(r) for r in leq)


def _image(phi: LambdaMorphism, S) -> tuple:
    from .pi1 import image_face
    return image_face(phi, S)
