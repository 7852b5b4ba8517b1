"""Words, finite presentations, coset enumeration and permutation groups.

A word is a tuple of nonzero ints: k stands for the k-th generator
(1-based) and -k for its inverse.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ResourceExhausted, ValidationError
from .monoid import lattice as lt

Word = tuple[int, ...]


def reduce_word(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def mul(*ws: Sequence[int]) -> Word:
    out: list[int] = []
    for w in ws:
        out.extend(w)
    return reduce_word(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(reduce_word(w))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def substitute(w: Sequence[int], images: Sequence[Word]) -> Word:
    """Replace generator k by images[k-1]."""
    out: list[int] = []
    for x in w:
        out.extend(images[x - 1] if x > 0 else invert(images[-x - 1]))
    return reduce_word(out)


def word_text(w: Sequence[int], names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[x - 1] if x > 0 else names[-x - 1] + "^-1" for x in w)


def parse_word(s: str, names: Sequence[str]) -> Word:
    out = []
    for tok in s.split():
        if tok == "1":
            continue
        inv = tok.endswith("^-1")
        nm = tok[:-3] if inv else tok
        if nm not in names:
            raise ValidationError(f"unknown generator {nm!r}")
        k = list(names).index(nm) + 1
        out.append(-k if inv else k)
    return reduce_word(out)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        n = len(self.generators)
        rels = tuple(reduce_word(r) for r in self.relators)
        if any(abs(x) > n or x == 0 for r in rels for x in r):
            raise ValidationError("relator mentions an unknown generator")
        object.__setattr__(self, "relators", rels)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def text(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(word_text(r, self.generators) for r in self.relators)
        return f"< {gens} | {rels} >"

    def is_free(self) -> bool:
        return all(not r for r in self.relators)

    def abelianization(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion invariant factors > 1)."""
        n = len(self.generators)
        rows = []
        for r in self.relators:
            v = [0] * n
            for x in r:
                v[abs(x) - 1] += 1 if x > 0 else -1
            if any(v):
                rows.append(tuple(v))
        d = lt.invariant_factors(rows, n) if rows else []
        return n - len(d), tuple(x for x in d if x > 1)


@dataclass(frozen=True)
class Simplified:
    presentation: Presentation
    substitution: tuple[Word, ...]  # old generator k -> word in the new generators


def tietze(p: Presentation) -> Simplified:
    """Eliminate generators that occur exactly once in some relator."""
    n = p.rank
    subst: list[Word] = [(k,) for k in range(1, n + 1)]
    alive = list(range(1, n + 1))
    rels = [cyclic_reduce(r) for r in p.relators]
    rels = [r for r in rels if r]
    while True:
        best = None
        for i, r in enumerate(rels):
            for g in alive:
                if sum(1 for x in r if abs(x) == g) == 1:
                    cand = (len(r), i, g)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        _, i, g = best
        r = rels.pop(i)
        pos = next(j for j, x in enumerate(r) if abs(x) == g)
        u, v = r[:pos], r[pos + 1:]
        repl = mul(invert(u), invert(v)) if r[pos] > 0 else mul(v, u)
        images = [(k,) for k in range(1, n + 1)]
        images[g - 1] = repl
        rels = [cyclic_reduce(substitute(x, images)) for x in rels]
        rels = [x for x in rels if x]
        subst = [substitute(w, images) for w in subst]
        alive.remove(g)
    renum = {g: i + 1 for i, g in enumerate(alive)}
    images = [()] * n
    for g, i in renum.items():
        images[g - 1] = (i,)

    def ren(w):
        return reduce_word(renum[x] if x > 0 else -renum[-x] for x in w)

    names = tuple(p.generators[g - 1] for g in alive)
    rels_out = sorted({ren(r) for r in rels}, key=lambda w: (len(w), w))
    return Simplified(Presentation(names, tuple(rels_out)), tuple(ren(w) for w in subst))


def coset_enumeration(p: Presentation, subgroup: Sequence[Word], max_cosets: int = 200_000) -> int:
    """Index of the subgroup generated by ``subgroup`` (HLT strategy)."""
    n = p.rank
    cols = [x for k in range(1, n + 1) for x in (k, -k)]
    col = {x: i for i, x in enumerate(cols)}
    table: list[list] = [[None] * len(cols)]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if len(table) >= max_cosets:
            raise ResourceExhausted(f"coset enumeration exceeded {max_cosets} cosets")
        d = len(table)
        table.append([None] * len(cols))
        parent.append(d)
        table[c][col[x]] = d
        table[d][col[-x]] = c

    def coincidence(a, b):
        queue = []

        def merge(k, l):
            k, l = rep(k), rep(l)
            if k == l:
                return
            if l < k:
                k, l = l, k
            parent[l] = k
            queue.append(l)

        merge(a, b)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in cols:
                f = table[e][col[x]]
                if f is None:
                    continue
                if table[f][col[-x]] == e:
                    table[f][col[-x]] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][col[x]] is not None:
                    merge(f1, table[e1][col[x]])
                elif table[f1][col[-x]] is not None:
                    merge(e1, table[f1][col[-x]])
                else:
                    table[e1][col[x]] = f1
                    table[f1][col[-x]] = e1

    def scan_and_fill(a, w):
        if not w:
            return
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j and table[f][col[w[i]]] is not None:
                f = table[f][col[w[i]]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return
            while j >= i and table[b][col[-w[j]]] is not None:
                b = table[b][col[-w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][col[w[i]]] = b
                table[b][col[-w[i]]] = f
                return
            define(f, w[i])

    for h in subgroup:
        scan_and_fill(0, reduce_word(h))
    c = 0
    while c < len(table):
        for r in p.relators:
            if parent[c] != c:
                break
            scan_and_fill(c, r)
        if parent[c] == c:
            for x in cols:
                if table[c][col[x]] is None:
                    define(c, x)
        c += 1
    return sum(1 for i in range(len(table)) if parent[i] == i)


# -- finite permutation groups -----------------------------------------------

Perm = tuple[int, ...]


def perm_mul(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


class PermGroup:
    """A finite group generated by permutations of range(degree)."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        self.degree = degree
        self.generators = tuple(tuple(int(v) for v in g) for g in generators)
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValidationError(f"{g} is not a permutation of {degree} points")
        self.names = tuple(names) if names else tuple(f"s{i + 1}" for i in range(len(self.generators)))
        if len(self.names) != len(self.generators):
            raise ValidationError("one name per generator")
        self.identity: Perm = tuple(range(degree))
        words = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for k, s in enumerate(self.generators, 1):
                h = perm_mul(g, s)
                if h not in words:
                    words[h] = words[g] + (k,)
                    queue.append(h)
        self.words = words
        self.elements = tuple(words)

    @property
    def order(self) -> int:
        return len(self.elements)

    def evaluate(self, w: Sequence[int]) -> Perm:
        return self.evaluate_images(self.generators, w)

    def evaluate_images(self, images: Sequence[Perm], w: Sequence[int]) -> Perm:
        """Value of w after sending generator k to images[k-1]."""
        g = self.identity
        for x in w:
            s = images[abs(x) - 1]
            g = perm_mul(g, s if x > 0 else perm_inv(s))
        return g

    def word(self, g: Perm) -> Word:
        return self.words[g]

    def presentation(self) -> Presentation:
        """Relators closing every non-tree edge of the Cayley graph."""
        rels = set()
        for g, wg in self.words.items():
            for k, s in enumerate(self.generators, 1):
                h = perm_mul(g, s)
                if self.words[h] != wg + (k,):
                    rels.add(cyclic_reduce(mul(wg, (k,), invert(self.words[h]))))
        rels.discard(())
        return Presentation(self.names, tuple(sorted(rels, key=lambda w: (len(w), w))))


@dataclass(frozen=True)
class GroupHom:
    source: PermGroup
    target: PermGroup
    images: tuple[Perm, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise ValidationError("one image per generator")
        for r in self.source.presentation().relators:
            if self.target.evaluate_images(self.images, r) != self.target.identity:
                raise ValidationError("generator images do not respect the relations")

    def __call__(self, g: Perm) -> Perm:
        return self.target.evaluate_images(self.images, self.source.word(g))

    def is_surjective(self) -> bool:
        return len({self(g) for g in self.source.elements}) == self.target.order

    def is_injective(self) -> bool:
        return len({self(g) for g in self.source.elements}) == self.source.order


def cyclic_product(orders: Sequence[int]) -> PermGroup:
    """Z/n_1 x ... x Z/n_k acting on disjoint cycles."""
    degree = sum(orders)
    gens, off = [], 0
    for n in orders:
        p = list(range(degree))
        for i in range(n):
            p[off + i] = off + (i + 1) % n
        gens.append(tuple(p))
        off += n
    names = ["a", "b", "c", "d"][: len(orders)] if len(orders) <= 4 else None
    return PermGroup(degree, gens, names)
