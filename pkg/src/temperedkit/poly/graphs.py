"""Curve-type complexes built by gluing edges, and maps that permute summands."""
from __future__ import annotations

from typing import Sequence

from ..errors import ValidationError
from . import lam
from .complex import Coequalizer, Elem, PolyMorphism, glue, offsets, representable
from .lam import Obj

EDGE: Obj = (1,)
_V0 = lam.parse_morphism("0>1:-:0")
_V1 = lam.parse_morphism("0>1:-:1")


def vertex_of_edge(k: int):
    return _V0 if k == 0 else _V1


def glued_edges(count: int, ends: Sequence[tuple[int, int]]) -> Coequalizer:
    """Edges with endpoint vertices ends[i] = (tail, head), glued by vertex labels."""
    if len(ends) != count:
        raise ValidationError("one (tail, head) pair per edge")
    first: dict[int, tuple[int, int]] = {}
    rels = []
    for i, pair in enumerate(ends):
        for k, v in enumerate(pair):
            if v in first:
                j, l = first[v]
                rels.append((j, vertex_of_edge(l), i, vertex_of_edge(k)))
            else:
                first[v] = (i, k)
    return glue([EDGE] * count, rels)


def cycle(n: int) -> Coequalizer:
    """n edges closed up into a circle; cycle(1) is the loop."""
    if n < 1:
        raise ValidationError("a cycle needs at least one edge")
    return glued_edges(n, [(i, (i + 1) % n) for i in range(n)])


def banana(k: int) -> Coequalizer:
    """k edges between two vertices."""
    if k < 1:
        raise ValidationError("a banana graph needs at least one edge")
    return glued_edges(k, [(0, 1)] * k)


def theta() -> Coequalizer:
    return banana(3)


def summand_map(src: Coequalizer, tgt: Coequalizer, sigma: Sequence[int]) -> PolyMorphism:
    """The morphism of quotients sending summand i to summand sigma[i] identically."""
    st, tt = _types(src), _types(tgt)
    if len(sigma) != len(st) or any(not 0 <= s < len(tt) for s in sigma):
        raise ValidationError("summand map must send every summand to a target summand")
    if any(st[i] != tt[s] for i, s in enumerate(sigma)):
        raise ValidationError("summand map must preserve summand types")
    to = offsets([representable(t) for t in tt])
    images = []
    for i, t in enumerate(st):
        for k in range(len(representable(t))):
            x = to[sigma[i]] + k
            images.append(tgt.projection(Elem(x, tgt.projection.source.types[x], lam.full_keep(
                tgt.projection.source.types[x]))))
    F = PolyMorphism(src.projection.source, tgt.quotient, tuple(images))
    return src.descend(F)


def _types(q: Coequalizer) -> list[Obj]:
    if q.summands is None:
        raise ValidationError("complex was not built by gluing representables")
    return list(q.summands)
