import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import V0, V1, complexes
from temperedkit.errors import ValidationError
from temperedkit.poly import lam
from temperedkit.poly.complex import (Elem, PolyMorphism, box_product, cell_counts, cell_poset,
                                      coequalizer, enumerate_morphisms, euler_characteristic,
                                      find_isomorphism, identity_morphism, is_bijective,
                                      is_interiorly_free, morphism_is_iso, parse_complex, point,
                                      poset_map, representable, representable_morphism)
from temperedkit.poly.graphs import banana, cycle, glued_edges, summand_map

FLIP = lam.parse_morphism("1>1:0>0:1,0")
EDGE = representable((1,))
LOOP = cycle(1).quotient


def to_point(C):
    return PolyMorphism(C, point(), tuple(Elem(0, t, ()) for t in C.types))


def rotation(n, k=1):
    q = cycle(n)
    return summand_map(q, q, [(i + k) % n for i in range(n)])


def test_representable_counts():
    assert len(EDGE) == 4
    assert len(representable((1, 1))) == 20
    assert len(representable((2,))) == 15
    assert cell_counts(representable((1, 1)))[(0,)] == 4


def test_cell_posets():
    assert len(cell_poset(EDGE)) == 3
    assert len(cell_poset(point())) == 1
    O = cell_poset(representable((1, 1)))
    assert len(O) == 9
    by_dim = [sum(1 for t in O.types if lam.dimension(t) == d) for d in range(3)]
    assert by_dim == [4, 4, 1]
    # four vertices below each of the square
    top = O.types.index((1, 1))
    assert sum(O.leq[i][top] for i in range(9)) == 9


def test_ez_examples():
    v = LOOP.vertices()[0]
    degeneracy = lam.homs((1,), (0,))[0]
    e = LOOP.act(LOOP.cell(v), degeneracy)
    assert e.cell == v and e.src == (1,) and e.keep == ()
    edge = next(x for x, t in enumerate(LOOP.types) if t == (1,))
    flipped = LOOP.act(LOOP.cell(edge), FLIP)
    assert flipped.nondegenerate and flipped.cell != edge
    assert LOOP.types[flipped.cell] == (1,)
    for x in range(len(EDGE)):
        for k in lam.subobjects(EDGE.types[x]):
            for iota in lam.injections(k, EDGE.types[x]):
                assert EDGE.act(EDGE.cell(x), iota).nondegenerate


def test_interior_freeness():
    assert is_interiorly_free(EDGE)
    assert is_interiorly_free(LOOP)
    assert not is_interiorly_free(complexes()["flip_edge"])


def test_box_products():
    sq = box_product(EDGE, EDGE)
    assert find_isomorphism(sq, representable((1, 1))) is not None
    for C in (EDGE, LOOP, cycle(3).quotient):
        assert find_isomorphism(box_product(C, point()), C) is not None
    torus = box_product(LOOP, LOOP)
    assert len(torus.vertices()) == 1
    assert euler_characteristic(torus) == 0


def edge_count(C):
    return sum(1 for t in cell_poset(C).types if t == (1,))


def test_box_counts_multiply():
    parts = [point(), EDGE, LOOP, cycle(2).quotient]
    for i, C in enumerate(parts):
        for D in parts[i:]:
            P = box_product(C, D)
            assert euler_characteristic(P) == euler_characteristic(C) * euler_characteristic(D)
            assert len(P.vertices()) == len(C.vertices()) * len(D.vertices())
            assert edge_count(P) == edge_count(C) * len(D.vertices()) + len(C.vertices()) * edge_count(D)


def test_coequalizers():
    a = representable_morphism(V0, tgt=EDGE)
    same = coequalizer(a, a)
    assert find_isomorphism(same.quotient, EDGE) is not None
    loop = coequalizer(a, representable_morphism(V1, tgt=EDGE)).quotient
    assert sorted(map(lam.type_key, loop.types)) == sorted(map(lam.type_key, LOOP.types))
    assert len(cell_poset(loop)) == 2
    for n in range(2, 6):
        C = cycle(n).quotient
        assert len(C.vertices()) == n
        assert sum(1 for t in cell_poset(C).types if t == (1,)) == n


def test_coequalizer_universal_property():
    a = representable_morphism(V0, tgt=EDGE)
    b = representable_morphism(V1, tgt=EDGE)
    q = coequalizer(a, b)
    for D in (point(), LOOP, cycle(2).quotient, cycle(3).quotient, banana(2).quotient):
        through = [F for F in enumerate_morphisms(EDGE, D) if a.then(F).images == b.then(F).images]
        out = list(enumerate_morphisms(q.quotient, D))
        assert len(through) == len(out)
        descended = {q.descend(F).images for F in through}
        assert descended == {G.images for G in out}
        for F in through:
            assert q.projection.then(q.descend(F)).images == F.images


def test_morphism_counts():
    c3 = cycle(3).quotient
    assert len(list(enumerate_morphisms(LOOP, c3))) == 3
    assert len(list(enumerate_morphisms(c3, LOOP))) == 27


def test_morphism_is_iso():
    for C in complexes().values():
        assert morphism_is_iso(identity_morphism(C))
    assert not morphism_is_iso(to_point(LOOP))
    for n in range(2, 7):
        for k in range(n):
            assert morphism_is_iso(rotation(n, k))


def test_iso_criterion_agrees_with_bijection():
    corpus = complexes()
    for name in ("loop", "cycle2", "cycle3", "edge", "banana2", "theta", "point"):
        C = corpus[name]
        for D in (C, point(), LOOP):
            for F in enumerate_morphisms(C, D):
                assert morphism_is_iso(F) == is_bijective(F), name


def test_o_is_functorial():
    corpus = complexes()
    chain = [corpus["cycle4"], corpus["cycle2"], LOOP, point()]
    for A, B, C in zip(chain, chain[1:], chain[2:]):
        for F in enumerate_morphisms(A, B):
            for G in list(enumerate_morphisms(B, C))[:4]:
                o = poset_map(F.then(G))
                of, og = poset_map(F), poset_map(G)
                assert o == tuple(og[i] for i in of)


def test_text_round_trip():
    for name, C in complexes().items():
        D = parse_complex(C.text())
        assert D.text() == C.text(), name
        if len(C) <= 12:
            assert find_isomorphism(C, D) is not None


def test_bad_morphism_rejected():
    with pytest.raises(ValidationError):
        PolyMorphism(EDGE, LOOP, tuple(EDGE.cell(x) for x in range(4)))
    with pytest.raises(ValidationError):
        glued_edges(2, [(0, 1)])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n), st.integers(0, n)), min_size=1, max_size=4)))
def test_glued_graphs_are_valid(ends):
    q = glued_edges(len(ends), ends)
    C = q.quotient
    C.validate()
    used = {v for pair in ends for v in pair}
    assert len(C.vertices()) == len(used)
    loops = sum(1 for s, t in ends if s == t)
    assert is_interiorly_free(C)
    assert euler_characteristic(C) == len(used) - len(ends)
    assert loops <= len(ends)
