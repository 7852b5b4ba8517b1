"""Barycentric 2-skeleta of realizations and their fundamental groups.

A face of the cell Sigma_n is a product of nonempty subsets S_l of [n_l].
A simplex of the barycentric subdivision is a strictly increasing chain of
faces; the vertex of a face is its barycenter.  Every chain is carried by
the cell of its top face, so a simplex is normalized to (cell class, chain
ending in the full face) and made canonical over the isomorphisms that
relate cells of the same class.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from . import groups as gp
from .errors import ValidationError
from .monoid import lattice as lt
from .poly import lam
from .poly.complex import Elem, PolyMorphism, PolysimplicialSet
from .poly.lam import POINT, LambdaMorphism, Obj

Face = tuple[tuple[int, ...], ...]
Chain = tuple[Face, ...]


def full_face(n: Obj) -> Face:
    return tuple(tuple(range(k + 1)) for k in n)


def faces(n: Obj) -> list[Face]:
    per = [[c for r in range(1, k + 2) for c in combinations(range(k + 1), r)] for k in n]
    return sorted(product(*per), key=lambda F: (sum(len(s) for s in F), F))


def face_le(a: Face, b: Face) -> bool:
    return all(set(x) <= set(y) for x, y in zip(a, b))


def face_inclusion(S: Face, n: Obj) -> LambdaMorphism:
    """The order-preserving injection onto the face S."""
    wide = [l for l, s in enumerate(S) if len(s) > 1]
    if not wide:
        return LambdaMorphism(POINT, n, (None,), tuple((s[0],) for s in S))
    k = tuple(len(S[l]) - 1 for l in wide)
    f = tuple(wide)
    return LambdaMorphism(k, n, f, tuple(tuple(s) for s in S))


def image_face(phi: LambdaMorphism, T: Face) -> Face:
    """Image under phi of the face T of Sigma_source."""
    inv = {l: j for j, l in enumerate(phi.f) if l is not None}
    out = []
    for l, a in enumerate(phi.alpha):
        if l in inv:
            out.append(tuple(sorted(a[t] for t in T[inv[l]])))
        else:
            out.append((a[0],))
    return tuple(out)


def preimage_face(iota: LambdaMorphism, S: Face) -> Face:
    """Preimage of a face S contained in the image of an injection."""
    if iota.source == POINT:
        return ((0,),)
    out = []
    for j, l in enumerate(iota.f):
        a = iota.alpha[l]
        out.append(tuple(t for t, v in enumerate(a) if v in S[l]))
    return tuple(out)


def project_face(keep: Sequence[int], T: Face) -> Face:
    return tuple(T[j] for j in keep) if keep else ((0,),)


@dataclass
class TwoSkeleton:
    complex: PolysimplicialSet
    vertices: list[int]                     # vertex i is the barycenter of cell class vertices[i]
    edges: list[tuple[int, int]]            # (tail, head) vertex indices
    triangles: list[tuple[int, ...]]        # boundary words in signed 1-based edge indices
    edge_keys: list[tuple] = field(default_factory=list)
    edge_index: dict = field(default_factory=dict)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)


class _Normalizer:
    """Canonical forms of subdivision simplices of one complex."""

    def __init__(self, C: PolysimplicialSet):
        self.C = C
        self.classes = C.iso_classes()
        self.class_of = C.class_index()
        self.links: dict[int, list[LambdaMorphism]] = {}
        for g in self.classes:
            r = g[0]
            for x in g:
                isos = [a for a in lam.homs(C.types[x], C.types[r]) if a.is_iso()
                        and C.face(r, a) == C.cell(x)]
                self.links[x] = isos

    def chain_in_cell(self, x: int, chain: Chain):
        """Canonical (class, chain) of a chain of faces of cell x, or None if it collapses."""
        C = self.C
        t = C.types[x]
        top = chain[-1]
        iota = face_inclusion(top, t) if t != POINT else lam.identity(POINT)
        e = C.face(x, iota)
        inner = [project_face(e.keep, preimage_face(iota, S)) for S in chain]
        return self.chain_at(e.cell, inner)

    def chain_at(self, y: int, chain: Sequence[Face]):
        if any(a == b for a, b in zip(chain, chain[1:])):
            return None
        t = self.C.types[y]
        if chain[-1] != full_face(t) and t != POINT:
            return self.chain_in_cell(y, tuple(chain))
        cls = self.class_of[y]
        best = min(tuple(image_face(a, S) for S in chain) for a in self.links[y])
        return cls, best

    def chain_of_element(self, e: Elem, chain: Sequence[Face]):
        """Push a chain of faces of Sigma_{e.src} along the polysimplex e."""
        inner = [project_face(e.keep, S) for S in chain]
        return self.chain_at(e.cell, inner)


def two_skeleton(C: PolysimplicialSet) -> TwoSkeleton:
    N = _Normalizer(C)
    ncls = len(N.classes)
    edge_keys: list = []
    edge_index: dict = {}
    tris: list = []
    edges: list = []
    for ci, g in enumerate(N.classes):
        r = g[0]
        t = C.types[r]
        if t == POINT:
            continue
        fs = faces(t)
        top = full_face(t)
        proper = [S for S in fs if S != top]
        for S in proper:
            key = N.chain_at(r, (S, top))
            if key is not None and key not in edge_index:
                edge_index[key] = len(edge_keys)
                edge_keys.append(key)
        for S0, S1 in combinations(proper, 2):
            if face_le(S0, S1):
                key = N.chain_at(r, (S0, S1, top))
                if key is not None:
                    tris.append(key)
    for cls, chain in edge_keys:
        low = N.chain_in_cell(N.classes[cls][0], (chain[0],))
        edges.append((low[0], cls))
    words = []
    for cls, (S0, S1, top) in sorted(set(tris)):
        r = N.classes[cls][0]
        e01 = N.chain_in_cell(r, (S0, S1))
        e12 = N.chain_at(r, (S1, top))
        e02 = N.chain_at(r, (S0, top))
        w = []
        if e01 is not None:
            w.append(edge_index[e01] + 1)
        w.append(edge_index[e12] + 1)
        w.append(-(edge_index[e02] + 1))
        words.append(tuple(w))
    return TwoSkeleton(C, list(range(ncls)), edges, words, edge_keys, edge_index)


def map_skeleton(F: PolyMorphism, src: TwoSkeleton, tgt: TwoSkeleton):
    """Simplicial map of skeleta induced by F: vertex map and edge map.

    An edge goes to a signed edge index of the target, or to 0 when it
    collapses to a vertex.
    """
    Ns, Nt = _Normalizer(F.source), _Normalizer(F.target)
    vmap = [Nt.class_of[F.images[g[0]].cell] for g in Ns.classes]
    emap = []
    for cls, chain in src.edge_keys:
        r = Ns.classes[cls][0]
        key = Nt.chain_of_element(F.images[r], chain)
        emap.append(0 if key is None else tgt.edge_index[key] + 1)
    return vmap, emap


# -- fundamental group -----------------------------------------------------------

@dataclass
class Pi1:
    skeleton: TwoSkeleton
    basepoint: int
    tree_parent: dict           # vertex -> (parent vertex, signed edge) along the BFS tree
    raw: gp.Presentation        # generators = non-tree edges
    presentation: gp.Presentation
    edge_words: list            # edge index -> word in the simplified generators

    def path_word(self, path: Sequence[int]) -> gp.Word:
        """Word of an edge path given as signed 1-based edge indices."""
        out: list[int] = []
        for x in path:
            w = self.edge_words[abs(x) - 1]
            out.extend(w if x > 0 else gp.invert(w))
        return gp.reduce_word(out)

    def tree_path(self, v: int) -> list[int]:
        """Signed edges of the tree path from the basepoint to v."""
        out = []
        while v != self.basepoint:
            u, e = self.tree_parent[v]
            out.append(e)
            v = u
        return list(reversed(out))

    def loop_of(self, w: gp.Word) -> list[int]:
        """An edge loop at the basepoint representing the word w."""
        gens = self.generator_edges()
        out: list[int] = []
        for x in w:
            e = gens[abs(x) - 1]
            tail, head = self.skeleton.edges[e - 1]
            piece = self.tree_path(tail) + [e] + invert_path(self.tree_path(head))
            out.extend(piece if x > 0 else invert_path(piece))
        return out

    def generator_edges(self) -> list[int]:
        return [int(name[1:]) for name in self.presentation.generators]


def invert_path(p: Sequence[int]) -> list[int]:
    return [-x for x in reversed(p)]


def components(sk: TwoSkeleton) -> list[list[int]]:
    adj = {v: [] for v in sk.vertices}
    for a, b in sk.edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, out = set(), []
    for v in sk.vertices:
        if v in seen:
            continue
        comp, queue = [], deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def pi1_presentation(sk: TwoSkeleton, basepoint: int | None = None) -> Pi1:
    if not sk.vertices:
        raise ValidationError("empty complex has no fundamental group")
    comps = components(sk)
    if len(comps) > 1:
        raise ValidationError(f"realization is disconnected: components {comps}")
    base = min(sk.vertices) if basepoint is None else basepoint
    if base not in sk.vertices:
        raise ValidationError(f"basepoint {base} is not a vertex")
    inc: dict[int, list[tuple[int, int]]] = {v: [] for v in sk.vertices}
    for i, (a, b) in enumerate(sk.edges, 1):
        inc[a].append((i, b))
        inc[b].append((-i, a))
    parent = {}
    seen = {base}
    queue = deque([base])
    tree = set()
    while queue:
        u = queue.popleft()
        for e, w in inc[u]:
            if w not in seen and abs(e) not in tree:
                seen.add(w)
                parent[w] = (u, e)
                tree.add(abs(e))
                queue.append(w)
    gens = [i for i in range(1, len(sk.edges) + 1) if i not in tree]
    gindex = {e: k for k, e in enumerate(gens, 1)}
    raw_edge = [() if i in tree else (gindex[i],) for i in range(1, len(sk.edges) + 1)]
    rels = []
    for w in sk.triangles:
        out = []
        for x in w:
            out.extend(raw_edge[abs(x) - 1] if x > 0 else gp.invert(raw_edge[abs(x) - 1]))
        r = gp.cyclic_reduce(out)
        if r:
            rels.append(r)
    raw = gp.Presentation(tuple(f"e{e}" for e in gens), tuple(rels))
    simp = gp.tietze(raw)
    edge_words = [gp.substitute(w, simp.substitution) if w else () for w in raw_edge]
    return Pi1(sk, base, parent, raw, simp.presentation, edge_words)


def fundamental_group(C: PolysimplicialSet) -> Pi1:
    return pi1_presentation(two_skeleton(C))


def boundary_ranks(sk: TwoSkeleton) -> tuple[int, int]:
    nv = len(sk.vertices)
    d1 = []
    for a, b in sk.edges:
        row = [0] * nv
        row[b] += 1
        row[a] -= 1
        d1.append(tuple(row))
    ne = len(sk.edges)
    d2 = []
    for w in sk.triangles:
        row = [0] * ne
        for x in w:
            row[abs(x) - 1] += 1 if x > 0 else -1
        d2.append(tuple(row))
    r1 = len(lt.invariant_factors(d1, nv)) if d1 else 0
    r2 = len(lt.invariant_factors(d2, ne)) if d2 else 0
    return r1, r2


def h1_rank(C: PolysimplicialSet) -> int:
    """First Betti number of the realization."""
    sk = two_skeleton(C)
    if len(components(sk)) != 1:
        raise ValidationError("realization is disconnected")
    r1, r2 = boundary_ranks(sk)
    return len(sk.edges) - r1 - r2
