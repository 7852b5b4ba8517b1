"""The category Lambda of products of simplices.

An object is a tuple ``n = (n_0, ..., n_p)`` with every entry at least 1,
or the point ``(0,)``.  It stands for the set [n_0] x ... x [n_p].

A morphism m -> n is stored as a triple.  ``f[j]`` is the target coordinate
that source coordinate j feeds, or None when j lies outside J.  ``alpha[l]``
lists the images of the injective map [m_j] -> [n_l] when l = f(j), and is a
one-entry tuple (a point of [n_l]) otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Sequence

from ..errors import ValidationError

Obj = tuple[int, ...]
POINT: Obj = (0,)


def check_object(n: Sequence[int]) -> Obj:
    n = tuple(int(x) for x in n)
    if n == POINT:
        return n
    if not n or any(x < 1 for x in n):
        raise ValidationError(f"{n} is not an object of Lambda")
    return n


def width(n: Obj) -> int:
    """w(n): the index of the last coordinate."""
    return len(n) - 1


def coords(n: Obj) -> tuple[int, ...]:
    """Coordinates that a morphism out of n may keep (none for the point)."""
    return () if n == POINT else tuple(range(len(n)))


def restrict(n: Obj, keep: Sequence[int]) -> Obj:
    return tuple(n[j] for j in keep) if keep else POINT


def points(n: Obj):
    return product(*(range(k + 1) for k in n))


def dimension(n: Obj) -> int:
    return 0 if n == POINT else sum(n)


@dataclass(frozen=True)
class LambdaMorphism:
    source: Obj
    target: Obj
    f: tuple
    alpha: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m, n = check_object(self.source), check_object(self.target)
        object.__setattr__(self, "source", m)
        object.__setattr__(self, "target", n)
        f = tuple(None if x is None else int(x) for x in self.f)
        alpha = tuple(tuple(int(v) for v in a) for a in self.alpha)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "alpha", alpha)
        if len(f) != len(m) or len(alpha) != len(n):
            raise ValidationError("triple has the wrong shape")
        if m == POINT and f != (None,):
            raise ValidationError("J must be empty for a morphism out of [0]")
        hit = [l for l in f if l is not None]
        if len(set(hit)) != len(hit) or any(not 0 <= l < len(n) for l in hit):
            raise ValidationError("f must be an injective map into the target coordinates")
        inv = {l: j for j, l in enumerate(f) if l is not None}
        for l, a in enumerate(alpha):
            if any(not 0 <= v <= n[l] for v in a):
                raise ValidationError(f"alpha_{l} leaves [{n[l]}]")
            if l in inv:
                if len(a) != m[inv[l]] + 1 or len(set(a)) != len(a):
                    raise ValidationError(f"alpha_{l} must be injective on [{m[inv[l]]}]")
            elif len(a) != 1:
                raise ValidationError(f"alpha_{l} must be a point of [{n[l]}]")

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(j for j, l in enumerate(self.f) if l is not None)

    def __call__(self, pt: Sequence[int]) -> tuple[int, ...]:
        inv = {l: j for j, l in enumerate(self.f) if l is not None}
        return tuple(a[pt[inv[l]]] if l in inv else a[0] for l, a in enumerate(self.alpha))

    def table(self) -> dict:
        return {p: self(p) for p in points(self.source)}

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        if self.source == POINT:
            return True
        return self.f == tuple(range(len(self.source))) and all(
            a == tuple(range(len(a))) for a in self.alpha)

    def is_injective(self) -> bool:
        return self.source == POINT or None not in self.f

    def is_surjective(self) -> bool:
        if self.target == POINT:
            return True
        hit = set(self.f)
        return all(l in hit for l in range(len(self.target))) and all(
            len(a) == self.target[l] + 1 for l, a in enumerate(self.alpha))

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_canonical_surjection(self) -> bool:
        J = self.J
        return (self.target == restrict(self.source, J)
                and all(self.f[j] == i for i, j in enumerate(J))
                and all(a == tuple(range(len(a))) for a in self.alpha))

    def text(self) -> str:
        src = ".".join(map(str, self.source))
        tgt = ".".join(map(str, self.target))
        fs = ",".join(f"{j}>{l}" for j, l in enumerate(self.f) if l is not None) or "-"
        al = "/".join(",".join(map(str, a)) for a in self.alpha)
        return f"{src}>{tgt}:{fs}:{al}"

    def __str__(self):
        return self.text()


def parse_morphism(s: str) -> LambdaMorphism:
    """Inverse of :meth:`LambdaMorphism.text`."""
    try:
        head, fs, al = s.strip().split(":")
        src, tgt = head.split(">")
        m = tuple(int(x) for x in src.split("."))
        n = tuple(int(x) for x in tgt.split("."))
        f = [None] * len(m)
        if fs != "-":
            for pair in fs.split(","):
                j, l = pair.split(">")
                f[int(j)] = int(l)
        alpha = tuple(tuple(int(v) for v in a.split(",")) for a in al.split("/"))
    except ValueError as exc:
        raise ValidationError(f"cannot parse Lambda morphism {s!r}") from exc
    return LambdaMorphism(m, n, tuple(f), alpha)


def identity(n: Obj) -> LambdaMorphism:
    n = check_object(n)
    if n == POINT:
        return LambdaMorphism(n, n, (None,), ((0,),))
    return LambdaMorphism(n, n, tuple(range(len(n))), tuple(tuple(range(k + 1)) for k in n))


def canonical_surjection(m: Obj, keep: Sequence[int]) -> LambdaMorphism:
    """Projection of m onto the coordinates in ``keep``, order preserved."""
    keep = tuple(keep)
    n = restrict(m, keep)
    f = [None] * len(m)
    for i, j in enumerate(keep):
        f[j] = i
    if not keep:
        return LambdaMorphism(m, POINT, tuple(f), ((0,),))
    return LambdaMorphism(m, n, tuple(f), tuple(tuple(range(k + 1)) for k in n))


def compose(g: LambdaMorphism, f: LambdaMorphism) -> LambdaMorphism:
    """g o f."""
    if f.target != g.source:
        raise ValidationError(f"cannot compose {g} after {f}")
    newf = tuple(None if l is None else g.f[l] for l in f.f)
    if f.source == POINT:
        newf = (None,)
    g_inv = {t: l for l, t in enumerate(g.f) if t is not None}
    f_inv = {l: j for j, l in enumerate(f.f) if l is not None}
    alpha = []
    for t in range(len(g.target)):
        l = g_inv.get(t)
        if l is None:
            alpha.append(g.alpha[t])
        elif l in f_inv:
            alpha.append(tuple(g.alpha[t][a] for a in f.alpha[l]))
        else:
            alpha.append((g.alpha[t][f.alpha[l][0]],))
    return LambdaMorphism(f.source, g.target, newf, tuple(alpha))


def factor(phi: LambdaMorphism) -> tuple[LambdaMorphism, LambdaMorphism]:
    """phi = iota o s with s a canonical surjection and iota injective."""
    J = phi.J
    s = canonical_surjection(phi.source, J)
    fi = tuple(phi.f[j] for j in J) if J else (None,)
    return LambdaMorphism(s.target, phi.target, fi, phi.alpha), s


def keep_after(keep: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Kept coordinates of (canonical inner) o (canonical keep)."""
    return tuple(keep[i] for i in inner)


def full_keep(m: Obj) -> tuple[int, ...]:
    return coords(m)


def factor_through(g: LambdaMorphism, s: LambdaMorphism) -> LambdaMorphism:
    """The morphism h with h o s = g, for s a canonical surjection."""
    if not s.is_canonical_surjection() or s.source != g.source:
        raise ValidationError("can only factor through a canonical surjection of the same source")
    keep = s.J
    if any(g.f[j] is not None for j in coords(g.source) if j not in keep):
        raise ValidationError(f"{g} does not factor through {s}")
    fh = tuple(g.f[j] for j in keep) if keep else (None,)
    return LambdaMorphism(s.target, g.target, fh, g.alpha)


def _subsets(m: Obj, strict: bool):
    cs = coords(m)
    for r in range(len(cs) + 1):
        if strict and 0 < r < len(cs):
            continue
        yield from combinations(cs, r)


@lru_cache(maxsize=None)
def homs(m: Obj, n: Obj, strict: bool = False) -> tuple[LambdaMorphism, ...]:
    """Every morphism m -> n.  ``strict`` drops J other than empty or everything."""
    out = []
    for J in _subsets(m, strict):
        for img in permutations(range(len(n)), len(J)):
            if any(m[j] > n[l] for j, l in zip(J, img)):
                continue
            f = [None] * len(m)
            for j, l in zip(J, img):
                f[j] = l
            choices = []
            for l in range(len(n)):
                if l in img:
                    j = J[img.index(l)]
                    choices.append(list(permutations(range(n[l] + 1), m[j] + 1)))
                else:
                    choices.append([(v,) for v in range(n[l] + 1)])
            for alpha in product(*choices):
                out.append(LambdaMorphism(m, n, tuple(f), tuple(alpha)))
    return tuple(out)


@lru_cache(maxsize=None)
def injections(m: Obj, n: Obj) -> tuple[LambdaMorphism, ...]:
    return tuple(h for h in homs(m, n) if h.is_injective())


@lru_cache(maxsize=None)
def surjections(m: Obj, n: Obj) -> tuple[LambdaMorphism, ...]:
    return tuple(h for h in homs(m, n) if h.is_surjective())


@lru_cache(maxsize=None)
def automorphisms(n: Obj) -> tuple[LambdaMorphism, ...]:
    return tuple(h for h in homs(n, n) if h.is_iso())


@lru_cache(maxsize=None)
def subobjects(n: Obj) -> tuple[Obj, ...]:
    """Objects admitting an injective morphism into n, point first."""
    n = check_object(n)
    out = {POINT}
    if n != POINT:
        for r in range(1, len(n) + 1):
            for img in permutations(range(len(n)), r):
                for sizes in product(*(range(1, n[l] + 1) for l in img)):
                    out.add(tuple(sizes))
    return tuple(sorted(out, key=type_key))


def type_key(n: Obj):
    return (dimension(n), len(n), n)


def isomorphic(m: Obj, n: Obj) -> bool:
    return sorted(m) == sorted(n)


def concat(m: Obj, n: Obj) -> Obj:
    """The box product of two objects; the point is the unit."""
    if m == POINT:
        return n
    if n == POINT:
        return m
    return m + n


def box(phi: LambdaMorphism, psi: LambdaMorphism) -> LambdaMorphism:
    """phi box psi : m m' -> n n'."""
    m, n = concat(phi.source, psi.source), concat(phi.target, psi.target)
    shift = 0 if phi.target == POINT else len(phi.target)
    fa = [] if phi.source == POINT else list(phi.f)
    fb = [] if psi.source == POINT else [None if l is None else l + shift for l in psi.f]
    alpha = ([] if phi.target == POINT else list(phi.alpha)) + (
        [] if psi.target == POINT else list(psi.alpha))
    f = fa + fb
    if m == POINT:
        f = [None]
    if n == POINT:
        alpha = [(0,)]
    return LambdaMorphism(m, n, tuple(f), tuple(alpha))


def inverse(phi: LambdaMorphism) -> LambdaMorphism:
    if not phi.is_iso():
        raise ValidationError(f"{phi} is not invertible")
    if phi.source == POINT:
        return phi
    f = [None] * len(phi.target)
    alpha = [None] * len(phi.source)
    for j, l in enumerate(phi.f):
        f[l] = j
        a = phi.alpha[l]
        inv = [0] * len(a)
        for i, v in enumerate(a):
            inv[v] = i
        alpha[j] = tuple(inv)
    return LambdaMorphism(phi.target, phi.source, tuple(f), tuple(alpha))
