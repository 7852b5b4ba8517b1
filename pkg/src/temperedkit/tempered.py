"""Extensions of a Galois group by the fundamental group of a complex, and towers of them.

An element of the extension is a pair (g, w): g in G and w the class of a
path from the basepoint x0 to g(x0), stored as the loop word of that path
closed up by the spanning-tree path back to x0.  The product is
(g, w)(h, v) = (gh, w . g[v] . c(g, h)) where g[v] transports a loop to
g(x0) and back along tree paths and c(g, h) is the class of g applied to the
tree path to h(x0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import groups as gp
from .errors import CommutingSquareError, UnsupportedInput, ValidationError
from .groups import GroupHom, Perm, PermGroup, Presentation, Word
from .pi1 import Pi1, invert_path, map_skeleton, pi1_presentation, two_skeleton
from .poly.complex import (PolyMorphism, PolysimplicialSet, identity_morphism, inverse_morphism,
                           is_interiorly_free, morphism_is_iso, point)
from .poly.graphs import cycle, summand_map


class GaloisActionDatum:
    """A finite permutation group acting on a complex by automorphisms."""

    def __init__(self, group: PermGroup, complex: PolysimplicialSet,
                 generators: Sequence[PolyMorphism]):
        self.group = group
        self.complex = complex
        self.generators = tuple(generators)
        if len(self.generators) != len(group.generators):
            raise ValidationError("one automorphism per group generator")
        for k, F in enumerate(self.generators):
            if F.source is not complex and F.source.types != complex.types:
                raise ValidationError(f"action of {group.names[k]} does not start at the complex")
            if F.target is not complex and F.target.types != complex.types:
                raise ValidationError(f"action of {group.names[k]} does not end at the complex")
            if not morphism_is_iso(F):
                raise ValidationError(f"action of {group.names[k]} is not an automorphism")
        maps = {group.identity: identity_morphism(complex)}
        for g, w in group.words.items():
            if w:
                prev = group.evaluate(w[:-1])
                maps[g] = self.generators[w[-1] - 1].then(maps[prev])
        for g in group.elements:
            for k, s in enumerate(group.generators):
                h = gp.perm_mul(g, s)
                if self.generators[k].then(maps[g]).images != maps[h].images:
                    raise ValidationError("the automorphisms do not define a group action")
        self._maps = maps

    def morphism(self, g: Perm) -> PolyMorphism:
        return self._maps[g]


def trivial_action(C: PolysimplicialSet) -> GaloisActionDatum:
    return GaloisActionDatum(PermGroup(1, [], []), C, [])


class _Model:
    """The concrete extension attached to an action and a basepoint."""

    def __init__(self, act: GaloisActionDatum, basepoint: int | None):
        self.act = act
        self.sk = two_skeleton(act.complex)
        self.pi = pi1_presentation(self.sk, basepoint)
        if not self.pi.presentation.is_free():
            raise UnsupportedInput("extensions are computed for complexes of graph homotopy type; "
                                   f"fundamental group {self.pi.presentation.text()} is not free")
        self.x0 = self.pi.basepoint
        G = act.group
        self.vmap, self.emap = {}, {}
        for g in G.elements:
            self.vmap[g], self.emap[g] = map_skeleton(act.morphism(g), self.sk, self.sk)
        self._transport = {}
        self._cocycle = {}

    def image_path(self, g: Perm, path: Sequence[int]) -> list[int]:
        em = self.emap[g]
        out = []
        for x in path:
            y = em[abs(x) - 1]
            if y:
                out.append(y if x > 0 else -y)
        return out

    def transport(self, g: Perm, w: Word) -> Word:
        """g applied to the loop w, brought back to x0 along tree paths."""
        return self.pi.path_word(self.image_path(g, self.pi.loop_of(w)))

    def cocycle(self, g: Perm, h: Perm) -> Word:
        key = (g, h)
        if key not in self._cocycle:
            path = self.pi.tree_path(self.vmap[h][self.x0])
            self._cocycle[key] = self.pi.path_word(self.image_path(g, path))
        return self._cocycle[key]

    def one(self):
        return (self.act.group.identity, ())

    def mul(self, a, b):
        (g, w), (h, v) = a, b
        return gp.perm_mul(g, h), gp.mul(w, self.transport(g, v), self.cocycle(g, h))

    def power(self, a, n: int):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def inv(self, a):
        g = a[0]
        n, h = 1, g
        while h != self.act.group.identity:
            h = gp.perm_mul(h, g)
            n += 1
        u = self.power(a, n)[1]
        return self.mul(self.power(a, n - 1), (self.act.group.identity, gp.invert(u)))

    def loop(self, w: Word):
        return (self.act.group.identity, gp.reduce_word(w))

    def evaluate(self, gens: Sequence, w: Sequence[int]):
        out = self.one()
        for x in w:
            out = self.mul(out, gens[x - 1] if x > 0 else self.inv(gens[-x - 1]))
        return out


@dataclass
class ExtensionPresentation:
    """Presentation of the extension with loop generators first, then lifts of G's generators."""

    presentation: Presentation
    kernel_generators: tuple[Word, ...]
    quotient_images: tuple[Perm, ...]
    group: PermGroup
    pi1: Pi1
    model: _Model = field(repr=False)

    @property
    def loop_rank(self) -> int:
        return self.pi1.presentation.rank

    @property
    def kernel_rank(self) -> int:
        return self.pi1.presentation.abelianization()[0]

    def generator_elements(self) -> list:
        r = self.loop_rank
        els = [self.model.loop((k,)) for k in range(1, r + 1)]
        els += [(s, ()) for s in self.group.generators]
        return els

    def element_word(self, a) -> Word:
        """Word in the presentation generators for a concrete element."""
        g, u = a
        wg = self.group.word(g)
        r = self.loop_rank
        lifted = self.model.evaluate(self.generator_elements()[r:], wg)
        loop = gp.mul(u, gp.invert(lifted[1]))
        return gp.mul(loop, tuple(x + r if x > 0 else x - r for x in wg))

    def quotient(self, w: Sequence[int]) -> Perm:
        return self.group.evaluate_images(self.quotient_images, w)

    def is_abelian(self) -> bool:
        els = self.generator_elements()
        m = self.model
        return all(m.mul(a, b) == m.mul(b, a) for a in els for b in els)

    def coset_index(self, max_cosets: int = 200_000) -> int:
        """Index of the loop subgroup, by coset enumeration."""
        return gp.coset_enumeration(self.presentation, self.kernel_generators, max_cosets)

    def text(self) -> str:
        return self.presentation.text()


def lift_extension(C: PolysimplicialSet, act: GaloisActionDatum,
                   basepoint: int | None = None, check: bool = True) -> ExtensionPresentation:
    if act.complex is not C and act.complex.types != C.types:
        raise ValidationError("action is defined on another complex")
    model = _Model(act, basepoint)
    G = act.group
    loops = model.pi.presentation
    r = loops.rank
    names = tuple(loops.generators) + tuple(G.names)
    if len(set(names)) != len(names):
        raise ValidationError(f"generator names clash: {names}")
    lifts = [(s, ()) for s in G.generators]
    rels: list[Word] = []
    for R in G.presentation().relators:
        g, u = model.evaluate(lifts, R)
        rels.append(gp.mul(tuple(x + r if x > 0 else x - r for x in R), gp.invert(u)))
    for k, s in enumerate(G.generators, 1):
        for i in range(1, r + 1):
            u = model.transport(s, (i,))
            rels.append(gp.mul((k + r, i, -(k + r)), gp.invert(u)))
    rels = [gp.cyclic_reduce(w) for w in rels]
    pres = Presentation(names, tuple(w for w in rels if w))
    qimg = tuple([G.identity] * r) + G.generators
    ext = ExtensionPresentation(pres, tuple((i,) for i in range(1, r + 1)), qimg, G, model.pi, model)
    if check:
        verify_extension(ext)
    return ext


def verify_extension(ext: ExtensionPresentation, max_cosets: int = 200_000):
    """Relators hold in the concrete model, the quotient is exact, the kernel is the loop subgroup."""
    m = ext.model
    els = ext.generator_elements()
    for R in ext.presentation.relators:
        if m.evaluate(els, R) != m.one():
            raise ValidationError(f"relator {gp.word_text(R, ext.presentation.generators)} fails")
        if ext.quotient(R) != ext.group.identity:
            raise ValidationError("quotient map does not respect the relators")
    for w in ext.kernel_generators:
        if ext.quotient(w) != ext.group.identity:
            raise ValidationError("loop generator maps nontrivially to the group")
    idx = ext.coset_index(max_cosets)
    if idx != ext.group.order:
        raise ValidationError(f"loop subgroup has index {idx}, expected {ext.group.order}")


# -- homomorphisms induced by equivariant maps ------------------------------------

@dataclass
class ExtensionHom:
    source: ExtensionPresentation
    target: ExtensionPresentation
    complex_map: PolyMorphism
    group_map: GroupHom
    images: tuple[Word, ...]     # words in the target generators

    def apply(self, w: Sequence[int]) -> Word:
        return gp.substitute(w, self.images)

    def kernel_images(self) -> tuple[Word, ...]:
        return self.images[: self.source.loop_rank]

    def is_isomorphism(self) -> bool:
        return bool(getattr(self, "_inverse", None))


def _check_equivariant(F: PolyMorphism, q: GroupHom, a1: GaloisActionDatum,
                       a2: GaloisActionDatum, level):
    for k, s in enumerate(a1.group.generators):
        lhs = a1.generators[k].then(F)
        rhs = F.then(a2.morphism(q(s)))
        if lhs.images != rhs.images:
            raise CommutingSquareError(
                f"complex map is not equivariant for generator {a1.group.names[k]}", level)


def induced_hom(e1: ExtensionPresentation, e2: ExtensionPresentation, F: PolyMorphism,
                q: GroupHom, level=None) -> ExtensionHom:
    """(g, path) goes to (q(g), correction . F(path) . q(g)(correction)^-1)."""
    m1, m2 = e1.model, e2.model
    if q.source is not e1.group or q.target is not e2.group:
        if q.source.elements != e1.group.elements or q.target.elements != e2.group.elements:
            raise ValidationError("group map does not match the extensions")
    _check_equivariant(F, q, m1.act, m2.act, level)
    vmap, emap = map_skeleton(F, m1.sk, m2.sk)

    def push(path):
        out = []
        for x in path:
            y = emap[abs(x) - 1]
            if y:
                out.append(y if x > 0 else -y)
        return out

    corr = m2.pi.tree_path(vmap[m1.x0])

    def image(a):
        g, w = a
        h = q(g)
        path = m1.pi.loop_of(w) + m1.pi.tree_path(m1.vmap[g][m1.x0])
        full = corr + push(path) + invert_path(m2.image_path(h, corr))
        return h, m2.pi.path_word(full)

    images = tuple(e2.element_word(image(a)) for a in e1.generator_elements())
    hom = ExtensionHom(e1, e2, F, q, images)
    els2 = e2.generator_elements()
    for R in e1.presentation.relators:
        if m2.evaluate(els2, hom.apply(R)) != m2.one():
            raise CommutingSquareError("induced map does not respect the relators", level)
    for k, w in enumerate(images):
        if e2.quotient(w) != q(e1.quotient_images[k]):
            raise CommutingSquareError("induced map does not commute with the quotients", level)
    return hom


def _identity_on_generators(h1: ExtensionHom, h2: ExtensionHom) -> bool:
    e = h1.source
    m = e.model
    els = e.generator_elements()
    for k, w in enumerate(h1.images):
        if m.evaluate(els, h2.apply(w)) != els[k]:
            return False
    return True


def check_isomorphism(hom: ExtensionHom) -> bool:
    """Invert the complex and group maps and compare both composites with the identity."""
    F, q = hom.complex_map, hom.group_map
    if not (q.is_injective() and q.is_surjective()) or not morphism_is_iso(F):
        return False
    Finv = inverse_morphism(F)
    qinv_map = {q(g): g for g in q.source.elements}
    qinv = GroupHom(q.target, q.source, tuple(qinv_map[s] for s in q.target.generators))
    back = induced_hom(hom.target, hom.source, Finv, qinv)
    ok = _identity_on_generators(hom, back) and _identity_on_generators(back, hom)
    hom._inverse = back if ok else None
    return ok


# -- towers --------------------------------------------------------------------

@dataclass
class TowerLevel:
    name: str
    action: GaloisActionDatum
    basepoint: int | None = None


@dataclass
class Connecting:
    """Covering map from level i+1 down to level i."""

    complex_map: PolyMorphism
    group_map: GroupHom


@dataclass
class TemperedTower:
    levels: list[TowerLevel]
    extensions: list[ExtensionPresentation]
    connecting: list[Connecting]
    homs: list[ExtensionHom]

    def report(self) -> list[tuple[str, int, int, str]]:
        return [(lv.name, e.group.order, e.kernel_rank, presentation_hash(e.presentation))
                for lv, e in zip(self.levels, self.extensions)]


def presentation_hash(p: Presentation) -> str:
    import hashlib
    return hashlib.sha256(p.text().encode()).hexdigest()[:12]


def build_tower(levels: Sequence[TowerLevel], connecting: Sequence[Connecting] = ()) -> TemperedTower:
    levels = list(levels)
    connecting = list(connecting)
    if not levels:
        raise ValidationError("a tower needs at least one level")
    if len(connecting) != len(levels) - 1:
        raise ValidationError("one connecting map between consecutive levels")
    exts = [lift_extension(lv.action.complex, lv.action, lv.basepoint) for lv in levels]
    homs = []
    for i, c in enumerate(connecting):
        if not c.group_map.is_surjective():
            raise ValidationError(f"connecting group map at level {i} is not surjective")
        homs.append(induced_hom(exts[i + 1], exts[i], c.complex_map, c.group_map, level=i))
    return TemperedTower(levels, exts, connecting, homs)


@dataclass
class TowerCospecialization:
    homs: list[ExtensionHom]
    isomorphisms: list[bool]


def cospecialize_tower(t1: TemperedTower, t2: TemperedTower, complex_maps: Sequence[PolyMorphism],
                       group_maps: Sequence[GroupHom] | None = None) -> TowerCospecialization:
    """Levelwise homomorphisms from the special tower t1 to the generic tower t2.

    Levels are matched by position; group maps default to the identity
    when both levels carry the same group.
    """
    if len(t1.levels) != len(t2.levels) or len(complex_maps) != len(t1.levels):
        raise ValidationError("towers must be matched level by level")
    homs, isos = [], []
    for i, F in enumerate(complex_maps):
        e1, e2 = t1.extensions[i], t2.extensions[i]
        if group_maps is not None:
            q = group_maps[i]
        else:
            if e1.group.elements != e2.group.elements:
                raise ValidationError(f"level {i}: groups differ, a group map is required")
            q = GroupHom(e1.group, e2.group, e2.group.generators)
        h = induced_hom(e1, e2, F, q, level=i)
        homs.append(h)
        isos.append(check_isomorphism(h) if is_interiorly_free(F.target) else False)
    for i in range(len(homs) - 1):
        # squares with the connecting maps commute on generators
        lower = t1.homs[i]
        for k, w in enumerate(lower.images):
            left = homs[i].apply(w)
            right = t2.homs[i].apply(homs[i + 1].images[k])
            m = t2.extensions[i].model
            els = t2.extensions[i].generator_elements()
            if m.evaluate(els, left) != m.evaluate(els, right):
                raise CommutingSquareError("cospecialization does not commute with the tower", i)
    return TowerCospecialization(homs, isos)


# -- elliptic curve analogues ---------------------------------------------------------

def tate_level(m: int) -> tuple[TowerLevel, object]:
    """cycle_m with (Z/m)^2 acting by rotation through the first factor."""
    q = cycle(m)
    G = gp.cyclic_product([m, m])
    rot = summand_map(q, q, [(i + 1) % m for i in range(m)])
    act = GaloisActionDatum(G, q.quotient, [rot, identity_morphism(q.quotient)])
    return TowerLevel(f"tate{m}", act), q


def good_level(m: int) -> TowerLevel:
    P = point()
    G = gp.cyclic_product([m, m])
    I = identity_morphism(P)
    return TowerLevel(f"good{m}", GaloisActionDatum(G, P, [I, I]))


def reduction_map(G: PermGroup, H: PermGroup) -> GroupHom:
    """Generator-wise map between products of cyclic groups of dividing orders."""
    return GroupHom(G, H, H.generators)


def _check_chain(ms: Sequence[int]):
    if not ms or any(m < 1 for m in ms):
        raise ValidationError("levels must be positive integers")
    for a, b in zip(ms, ms[1:]):
        if b % a:
            raise ValidationError(f"level {a} does not divide level {b}")


def tate_tower(ms: Sequence[int]) -> TemperedTower:
    _check_chain(ms)
    built = [tate_level(m) for m in ms]
    conn = []
    for (lo, qlo), (hi, qhi), a in zip(built, built[1:], ms):
        F = summand_map(qhi, qlo, [i % a for i in range(len(qhi.summands))])
        conn.append(Connecting(F, reduction_map(hi.action.group, lo.action.group)))
    return build_tower([lv for lv, _ in built], conn)


def good_tower(ms: Sequence[int]) -> TemperedTower:
    _check_chain(ms)
    levels = [good_level(m) for m in ms]
    conn = [Connecting(identity_morphism(lo.action.complex),
                       reduction_map(hi.action.group, lo.action.group))
            for lo, hi in zip(levels, levels[1:])]
    return build_tower(levels, conn)


def collapse_maps(t: TemperedTower) -> list[PolyMorphism]:
    """The unique maps from each level's complex to the point."""
    from .poly.complex import Elem
    out = []
    for lv in t.levels:
        C = lv.action.complex
        P = point()
        out.append(PolyMorphism(C, P, tuple(Elem(0, s, ()) for s in C.types)))
    return out
