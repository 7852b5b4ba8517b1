"""Finite polysimplicial sets stored by nondegenerate cells.

Every nondegenerate polysimplex is a cell, including the images of a cell
under automorphisms of its type.  The attachment table records, for each
cell x and each non-identity injective morphism iota into its type, the
Eilenberg-Zilber normal form of x.iota: a cell y and the coordinates kept by
a canonical surjection s with x.iota = y.s.  An arbitrary polysimplex is an
:class:`Elem` (cell, source type, kept coordinates), i.e. cell.s.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ..errors import ResourceExhausted, ValidationError
from . import lam
from .lam import POINT, LambdaMorphism, Obj


@dataclass(frozen=True, order=True)
class Elem:
    cell: int
    src: Obj
    keep: tuple[int, ...]

    @property
    def nondegenerate(self) -> bool:
        return self.keep == lam.coords(self.src)


class PolysimplicialSet:
    """Cells with types and an attachment table in normal form."""

    def __init__(self, types: Sequence[Obj], attach: Mapping, names: Sequence[str] | None = None,
                 check: bool = True):
        self.types = tuple(lam.check_object(t) for t in types)
        self.names = tuple(names) if names is not None else tuple(f"c{i}" for i in range(len(types)))
        if len(self.names) != len(self.types):
            raise ValidationError("one name per cell")
        self.attach = MappingProxyType({k: (int(v[0]), tuple(v[1])) for k, v in attach.items()})
        if check:
            self.validate()

    def __len__(self):
        return len(self.types)

    def __repr__(self):
        return f"PolysimplicialSet({len(self)} cells)"

    # -- elements ---------------------------------------------------------

    def cell(self, x: int) -> Elem:
        t = self.types[x]
        return Elem(x, t, lam.coords(t))

    def face(self, x: int, iota: LambdaMorphism) -> Elem:
        """x.iota for an injective iota into the type of x."""
        if iota.target != self.types[x]:
            raise ValidationError(f"{iota} does not target the type of cell {x}")
        if iota.is_identity():
            return self.cell(x)
        try:
            y, keep = self.attach[(x, iota)]
        except KeyError:
            raise ValidationError(f"missing attachment for cell {x} along {iota}") from None
        return Elem(y, iota.source, keep)

    def act(self, e: Elem, phi: LambdaMorphism) -> Elem:
        """The polysimplex e.phi."""
        if phi.target != e.src:
            raise ValidationError(f"{phi} does not target {e.src}")
        s = lam.canonical_surjection(e.src, e.keep)
        iota, s2 = lam.factor(lam.compose(s, phi))
        z = self.face(e.cell, iota)
        return Elem(z.cell, phi.source, lam.keep_after(s2.J, z.keep))

    def elements(self, m: Obj) -> list[Elem]:
        """All polysimplices of type m (finitely many)."""
        m = lam.check_object(m)
        out = []
        for y, t in enumerate(self.types):
            for keep in _keeps_onto(m, t):
                out.append(Elem(y, m, keep))
        return out

    def cells_of_type(self, t: Obj) -> list[int]:
        return [i for i, s in enumerate(self.types) if s == t]

    def cell_types(self) -> list[Obj]:
        return sorted(set(self.types), key=lam.type_key)

    def type_closure(self) -> list[Obj]:
        ts = {POINT}
        for t in set(self.types):
            ts.update(lam.subobjects(t))
        return sorted(ts, key=lam.type_key)

    # -- structure --------------------------------------------------------

    def validate(self):
        n = len(self.types)
        for x, t in enumerate(self.types):
            for k in lam.subobjects(t):
                for iota in lam.injections(k, t):
                    if iota.is_identity():
                        continue
                    e = self.face(x, iota)
                    if not 0 <= e.cell < n:
                        raise ValidationError(f"attachment of cell {x} names unknown cell {e.cell}")
                    if lam.restrict(k, e.keep) != self.types[e.cell] or not _valid_keep(k, e.keep):
                        raise ValidationError(f"attachment of cell {x} along {iota} is ill-typed")
        for (x, iota) in self.attach:
            if not 0 <= x < n or iota.target != self.types[x] or not iota.is_injective() \
                    or iota.is_identity():
                raise ValidationError(f"spurious attachment entry for cell {x}: {iota}")
        for x, t in enumerate(self.types):
            for k in lam.subobjects(t):
                for i1 in lam.injections(k, t):
                    e1 = self.face(x, i1)
                    for k2 in lam.subobjects(k):
                        for i2 in lam.injections(k2, k):
                            if self.act(e1, i2) != self.face(x, lam.compose(i1, i2)):
                                raise ValidationError(
                                    f"attachments of cell {x} are incoherent along {i1} then {i2}")

    def iso_classes(self) -> list[tuple[int, ...]]:
        """Cells grouped by the isomorphism relation x ~ x.sigma."""
        parent = list(range(len(self)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (x, iota), (y, keep) in self.attach.items():
            if iota.is_iso():
                ra, rb = find(x), find(y)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for x in range(len(self)):
            groups.setdefault(find(x), []).append(x)
        return sorted((tuple(g) for g in groups.values()),
                      key=lambda g: (lam.type_key(self.types[g[0]]), g))

    def class_index(self) -> list[int]:
        idx = [0] * len(self)
        for i, g in enumerate(self.iso_classes()):
            for x in g:
                idx[x] = i
        return idx

    def vertices(self) -> list[int]:
        return [x for x, t in enumerate(self.types) if t == POINT]

    def dimension(self) -> int:
        return max((lam.dimension(t) for t in self.types), default=-1)

    def relabel(self, names: Sequence[str]) -> PolysimplicialSet:
        return PolysimplicialSet(self.types, self.attach, names, check=False)

    def text(self) -> str:
        lines = [f"cells {len(self)}"]
        for i, t in enumerate(self.types):
            lines.append(f"cell {i} {'.'.join(map(str, t))} {self.names[i]}")
        entries = sorted(self.attach.items(), key=lambda kv: (kv[0][0], lam.type_key(kv[0][1].source),
                                                              kv[0][1].text()))
        for (x, iota), (y, keep) in entries:
            ks = ",".join(map(str, keep)) if keep else "-"
            lines.append(f"attach {x} {iota.text()} {y} {ks}")
        return "\n".join(lines) + "\n"


def _valid_keep(m: Obj, keep) -> bool:
    cs = lam.coords(m)
    return all(k in cs for k in keep) and list(keep) == sorted(set(keep))


def _keeps_onto(m: Obj, t: Obj):
    """Coordinate subsets of m whose canonical surjection lands on t."""
    cs = lam.coords(m)
    r = 0 if t == POINT else len(t)
    if r > len(cs):
        return []
    return [k for k in combinations(cs, r) if lam.restrict(m, k) == t]


def parse_complex(text: str) -> PolysimplicialSet:
    """Inverse of :meth:`PolysimplicialSet.text`."""
    types, names, attach = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "cells":
                continue
            if parts[0] == "cell":
                i = int(parts[1])
                types[i] = tuple(int(v) for v in parts[2].split("."))
                names[i] = parts[3] if len(parts) > 3 else f"c{i}"
            elif parts[0] == "attach":
                x = int(parts[1])
                iota = lam.parse_morphism(parts[2])
                y = int(parts[3])
                keep = () if parts[4] == "-" else tuple(int(v) for v in parts[4].split(","))
                attach[(x, iota)] = (y, keep)
            else:
                raise ValidationError(f"unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValidationError(f"line {lineno}: {exc}") from exc
    n = len(types)
    if sorted(types) != list(range(n)):
        raise ValidationError("cell indices must be 0..n-1")
    return PolysimplicialSet([types[i] for i in range(n)], attach, [names[i] for i in range(n)])


# -- constructions ------------------------------------------------------------

def representable(n: Obj) -> PolysimplicialSet:
    """Lambda[n]: its nondegenerate polysimplices are the injections into n."""
    n = lam.check_object(n)
    cells = [i for k in lam.subobjects(n) for i in sorted(lam.injections(k, n), key=lambda h: h.text())]
    index = {c: i for i, c in enumerate(cells)}
    attach = {}
    for x, c in enumerate(cells):
        for k in lam.subobjects(c.source):
            for iota in lam.injections(k, c.source):
                if not iota.is_identity():
                    attach[(x, iota)] = (index[lam.compose(c, iota)], lam.coords(k))
    names = [c.text() for c in cells]
    pc = PolysimplicialSet([c.source for c in cells], attach, names, check=False)
    pc.maps = tuple(cells)
    pc.top = index[lam.identity(n)]
    return pc


def point() -> PolysimplicialSet:
    return representable(POINT)


def empty() -> PolysimplicialSet:
    return PolysimplicialSet([], {}, [], check=False)


def disjoint_union(*parts: PolysimplicialSet) -> PolysimplicialSet:
    types, names, attach = [], [], {}
    off = 0
    for j, C in enumerate(parts):
        types.extend(C.types)
        names.extend(f"{j}:{nm}" for nm in C.names)
        for (x, iota), (y, keep) in C.attach.items():
            attach[(x + off, iota)] = (y + off, keep)
        off += len(C)
    return PolysimplicialSet(types, attach, names, check=False)


def offsets(parts: Sequence[PolysimplicialSet]) -> list[int]:
    out, off = [], 0
    for C in parts:
        out.append(off)
        off += len(C)
    return out


@dataclass(frozen=True)
class PolyMorphism:
    """A morphism given by the images of the cells of the source."""

    source: PolysimplicialSet
    target: PolysimplicialSet
    images: tuple[Elem, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise ValidationError("one image per source cell")
        for x, e in enumerate(self.images):
            if e.src != self.source.types[x]:
                raise ValidationError(f"cell {x} has type {self.source.types[x]} but image type {e.src}")
            if not 0 <= e.cell < len(self.target):
                raise ValidationError(f"image of cell {x} is not a cell of the target")
        for (x, iota), (y, keep) in self.source.attach.items():
            if self.target.act(self.images[x], iota) != self(Elem(y, iota.source, keep)):
                raise ValidationError(f"images do not commute with the face of cell {x} along {iota}")

    def __call__(self, e: Elem) -> Elem:
        s = lam.canonical_surjection(e.src, e.keep)
        return self.target.act(self.images[e.cell], s)

    def then(self, other: PolyMorphism) -> PolyMorphism:
        """Composite other o self."""
        return PolyMorphism(self.source, other.target, tuple(other(e) for e in self.images))

    def preserves_nondegenerate(self) -> bool:
        return all(e.nondegenerate for e in self.images)

    def key(self):
        return self.images


def identity_morphism(C: PolysimplicialSet) -> PolyMorphism:
    return PolyMorphism(C, C, tuple(C.cell(x) for x in range(len(C))))


def representable_morphism(phi: LambdaMorphism, src: PolysimplicialSet | None = None,
                           tgt: PolysimplicialSet | None = None) -> PolyMorphism:
    """Lambda[m] -> Lambda[n] induced by phi : m -> n."""
    src = src or representable(phi.source)
    tgt = tgt or representable(phi.target)
    index = {c: i for i, c in enumerate(tgt.maps)}
    images = []
    for c in src.maps:
        iota, s = lam.factor(lam.compose(phi, c))
        images.append(Elem(index[iota], c.source, s.J))
    return PolyMorphism(src, tgt, tuple(images))


def element_morphism(C: PolysimplicialSet, e: Elem, rep: PolysimplicialSet | None = None) -> PolyMorphism:
    """The morphism Lambda[n] -> C classifying the polysimplex e of type n."""
    rep = rep or representable(e.src)
    return PolyMorphism(rep, C, tuple(C.act(e, c) for c in rep.maps))


def sum_morphism(source_parts: Sequence[PolysimplicialSet], pieces: Sequence[PolyMorphism],
                 target: PolysimplicialSet) -> PolyMorphism:
    """The morphism out of a disjoint union assembled from one morphism per part."""
    src = disjoint_union(*source_parts)
    images = []
    for p in pieces:
        images.extend(p.images)
    return PolyMorphism(src, target, tuple(images))


# -- quotients ---------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        p = self.parent
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class Coequalizer:
    quotient: PolysimplicialSet
    projection: PolyMorphism
    section: tuple[int, ...]
    summands: tuple[Obj, ...] | None = None  # representable summand types, for glued quotients

    def descend(self, F: PolyMorphism) -> PolyMorphism:
        """The morphism out of the quotient induced by F, which must coequalize."""
        if len(F.source) != len(self.projection.source):
            raise ValidationError("morphism does not start at the coequalized complex")
        G = PolyMorphism(self.quotient, F.target, tuple(F.images[y] for y in self.section))
        for x, e in enumerate(self.projection.images):
            if G(e) != F.images[x]:
                raise ValidationError("morphism does not coequalize the pair")
        return G


def coequalizer(a: PolyMorphism, b: PolyMorphism) -> Coequalizer:
    """Quotient of the common target of a and b by a(x) ~ b(x)."""
    if a.source is not b.source and a.source.types != b.source.types:
        raise ValidationError("coequalizer needs parallel morphisms")
    C = a.target
    if b.target is not C and b.target.types != C.types:
        raise ValidationError("coequalizer needs parallel morphisms")
    T = C.type_closure()
    uf = _UnionFind()
    for m in T:
        for e in C.elements(m):
            uf.add(e)
    for x, t in enumerate(a.source.types):
        ea, eb = a.images[x], b.images[x]
        for m in T:
            for phi in lam.homs(m, t):
                uf.union(C.act(ea, phi), C.act(eb, phi))
    return _quotient(C, T, uf)


def _quotient(C: PolysimplicialSet, T: list[Obj], uf: _UnionFind) -> Coequalizer:
    members: dict = {}
    for m in T:
        for e in C.elements(m):
            members.setdefault(uf.find(e), []).append(e)
    nondeg = [r for r, ms in members.items() if all(e.nondegenerate for e in ms)]
    nondeg.sort(key=lambda r: (lam.type_key(r.src), min(members[r])))
    cell_of = {r: i for i, r in enumerate(nondeg)}

    def normal_form(e: Elem):
        r = uf.find(e)
        if r in cell_of:
            return cell_of[r], e.src, lam.coords(e.src)
        best = min(members[r], key=lambda z: (len(z.keep), z))
        base = uf.find(C.cell(best.cell))
        if base not in cell_of:
            raise ValidationError("quotient violates the Eilenberg-Zilber normal form")
        return cell_of[base], e.src, best.keep

    types = [r.src for r in nondeg]
    reps = [min(members[r]) for r in nondeg]
    attach = {}
    for i, (t, rep) in enumerate(zip(types, reps)):
        for k in lam.subobjects(t):
            for iota in lam.injections(k, t):
                if iota.is_identity():
                    continue
                y, _, keep = normal_form(C.act(rep, iota))
                attach[(i, iota)] = (y, keep)
    names = [C.names[min(members[r]).cell] for r in nondeg]
    Q = PolysimplicialSet(types, attach, names, check=False)
    proj = tuple(Elem(*normal_form(C.cell(x))) for x in range(len(C)))
    section = tuple(rep.cell for rep in reps)
    return Coequalizer(Q, PolyMorphism(C, Q, proj), section)


def glue(types: Sequence[Obj], relations: Iterable[tuple[int, LambdaMorphism, int, LambdaMorphism]]
         ) -> Coequalizer:
    """Quotient of a disjoint union of representables.

    Each relation (i, phi, j, psi) identifies the polysimplex phi of the
    i-th summand with the polysimplex psi of the j-th summand; phi and psi
    share their source.
    """
    reps = {t: representable(t) for t in set(types)}
    parts = [reps[t] for t in types]
    U = disjoint_union(*parts)
    offs = offsets(parts)
    index = [{c: x for x, c in enumerate(reps[t].maps)} for t in types]
    relations = list(relations)
    src_parts, ia, ib = [], [], []
    for i, phi, j, psi in relations:
        if phi.source != psi.source or phi.target != types[i] or psi.target != types[j]:
            raise ValidationError(f"relation {phi} ~ {psi} does not match the summand types")
        R = reps.get(phi.source) or representable(phi.source)
        reps.setdefault(phi.source, R)
        src_parts.append(R)
        for (summand, mor, out) in ((i, phi, ia), (j, psi, ib)):
            for c in R.maps:
                iota, s = lam.factor(lam.compose(mor, c))
                out.append(Elem(index[summand][iota] + offs[summand], c.source, s.J))
    V = disjoint_union(*src_parts)
    q = coequalizer(PolyMorphism(V, U, tuple(ia)), PolyMorphism(V, U, tuple(ib)))
    return replace(q, summands=tuple(types))


def presentation(C: PolysimplicialSet):
    """Summand types and relations presenting C as a quotient of representables."""
    types = list(C.types)
    rels = []
    for (x, iota), (y, keep) in sorted(C.attach.items(), key=lambda kv: (kv[0][0], kv[0][1].text())):
        rels.append((x, iota, y, lam.canonical_surjection(iota.source, keep)))
    return types, rels


def box_product(C: PolysimplicialSet, D: PolysimplicialSet) -> PolysimplicialSet:
    """C box D, computed from presentations; the point is a unit."""
    tc, rc = presentation(C)
    td, rd = presentation(D)
    nd = len(td)
    types = [lam.concat(s, t) for s in tc for t in td]
    rels = []
    for (x, phi, y, psi) in rc:
        for z, t in enumerate(td):
            idt = lam.identity(t)
            rels.append((x * nd + z, lam.box(phi, idt), y * nd + z, lam.box(psi, idt)))
    for (x, phi, y, psi) in rd:
        for z, s in enumerate(tc):
            ids = lam.identity(s)
            rels.append((z * nd + x, lam.box(ids, phi), z * nd + y, lam.box(ids, psi)))
    if not types:
        return empty()
    Q = glue(types, rels).quotient
    return Q


def quotient_by_action(C: PolysimplicialSet, maps: Sequence[PolyMorphism]) -> Coequalizer:
    """Coequalize the identity with each given endomorphism."""
    uf = _UnionFind()
    T = C.type_closure()
    for m in T:
        for e in C.elements(m):
            uf.add(e)
    for F in maps:
        for m in T:
            for e in C.elements(m):
                uf.union(e, F(e))
    return _quotient(C, T, uf)


# -- posets, freeness, isomorphisms ------------------------------------------

@dataclass(frozen=True)
class CellPoset:
    classes: tuple[tuple[int, ...], ...]
    types: tuple[Obj, ...]
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple[str, ...]

    def __len__(self):
        return len(self.classes)

    def relations(self):
        n = len(self)
        return [(i, j) for i in range(n) for j in range(n) if i != j and self.leq[i][j]]

    def to_digraph(self):
        import networkx as nx
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from(self.relations())
        return g


def cell_poset(C: PolysimplicialSet) -> CellPoset:
    classes = C.iso_classes()
    idx = C.class_index()
    n = len(classes)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for (x, iota), (y, keep) in C.attach.items():
        if keep == lam.coords(iota.source):
            leq[idx[y]][idx[x]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    labels = tuple(C.names[g[0]] for g in classes)
    return CellPoset(tuple(classes), tuple(C.types[g[0]] for g in classes),
                     tuple(tuple(r) for r in leq), labels)


def poset_map(F: PolyMorphism) -> tuple[int, ...]:
    """O(F): class of x goes to the class of the nondegenerate base of F(x)."""
    src_classes = F.source.iso_classes()
    tgt_idx = F.target.class_index()
    return tuple(tgt_idx[F.images[g[0]].cell] for g in src_classes)


def is_interiorly_free(C: PolysimplicialSet) -> bool:
    for x, t in enumerate(C.types):
        for a in lam.automorphisms(t):
            if not a.is_identity() and C.face(x, a) == C.cell(x):
                return False
    return True


def is_bijective(F: PolyMorphism) -> bool:
    """Nondegenerate to nondegenerate and a bijection on nondegenerate cells."""
    if not F.preserves_nondegenerate() or len(F.source) != len(F.target):
        return False
    return len({e.cell for e in F.images}) == len(F.target)


def morphism_is_iso(F: PolyMorphism) -> bool:
    """Sufficient criterion first; exhaustive bijection check otherwise."""
    if F.preserves_nondegenerate() and is_interiorly_free(F.target):
        Os, Ot = cell_poset(F.source), cell_poset(F.target)
        o = poset_map(F)
        if len(Os) == len(Ot) and len(set(o)) == len(o):
            if all(Os.leq[i][j] == Ot.leq[o[i]][o[j]] for i in range(len(o)) for j in range(len(o))):
                return True
    return is_bijective(F)


def inverse_morphism(F: PolyMorphism) -> PolyMorphism:
    if not is_bijective(F):
        raise ValidationError("morphism is not invertible")
    images = [None] * len(F.target)
    for x, e in enumerate(F.images):
        images[e.cell] = F.source.cell(x)
    return PolyMorphism(F.target, F.source, tuple(images))


def enumerate_morphisms(C: PolysimplicialSet, D: PolysimplicialSet, limit: int = 1_000_000):
    """Yield every morphism C -> D.

    The image of one representative per isomorphism class is chosen and the
    rest of the class follows from it.  Candidates are checked against every
    attachment between assigned cells, so search trees stay small.
    """
    classes = C.iso_classes()
    links = {}
    for (x, iota), (y, keep) in C.attach.items():
        if iota.is_iso():
            links.setdefault((x, y), iota)
    reach = {g[0]: [(x, links.get((g[0], x))) for x in g] for g in classes}
    reps = sorted(reach, key=lambda r: lam.type_key(C.types[r]))
    entries: dict[int, list] = {}
    for (x, iota), (y, keep) in C.attach.items():
        entries.setdefault(x, []).append((iota, y, lam.canonical_surjection(iota.source, keep)))
    img: dict[int, Elem] = {}
    count = [0]

    def consistent(cells):
        for x in cells:
            for iota, y, s in entries.get(x, ()):
                if y in img and D.act(img[x], iota) != D.act(img[y], s):
                    return False
        return True

    def assign(pos):
        if pos == len(reps):
            yield PolyMorphism(C, D, tuple(img[x] for x in range(len(C))))
            return
        r = reps[pos]
        for cand in D.elements(C.types[r]):
            count[0] += 1
            if count[0] > limit:
                raise ResourceExhausted(f"morphism search exceeded {limit} candidates")
            new, ok = [], True
            for x, iota in reach[r]:
                e = cand if x == r else D.act(cand, iota)
                if x in img:
                    ok = img[x] == e
                    if not ok:
                        break
                    continue
                img[x] = e
                new.append(x)
            if ok:
                touched = set(new)
                ok = consistent(touched | {x for x in img
                                           if any(y in touched for _, y, _ in entries.get(x, ()))})
            if ok:
                yield from assign(pos + 1)
            for x in new:
                del img[x]

    yield from assign(0)


def find_isomorphism(C: PolysimplicialSet, D: PolysimplicialSet) -> PolyMorphism | None:
    if sorted(map(lam.type_key, C.types)) != sorted(map(lam.type_key, D.types)):
        return None
    for F in enumerate_morphisms(C, D):
        if is_bijective(F):
            return F
    return None


def cell_counts(C: PolysimplicialSet) -> dict[Obj, int]:
    out: dict[Obj, int] = {}
    for t in C.types:
        out[t] = out.get(t, 0) + 1
    return out


def euler_characteristic(C: PolysimplicialSet) -> int:
    """Alternating count of isomorphism classes of cells by dimension.

    This is the Euler characteristic of the realization when C is
    interiorly free.
    """
    return sum((-1) ** lam.dimension(C.types[g[0]]) for g in C.iso_classes())
