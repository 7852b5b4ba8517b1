import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import N, N2, map_corpus
from temperedkit.errors import ValidationError
from temperedkit.monoid import (AffineMonoid, Face, MonoidMap, classify_map, face_poset,
                                free_monoid, group_envelope, identity_map, is_exact, is_kummer,
                                is_l_kummer, kummer_face_transport, localize, pushout,
                                pushout_with_maps, restrict_to_face, saturate, saturation_index,
                                scalar_map, sharpen, smallest_face_containing, units)
from temperedkit.monoid import lattice as lt

Z = AffineMonoid(1, ((1,), (-1,)))
EMPTY = AffineMonoid(0, ())


def face_with(P, gens):
    return next(F for F in face_poset(P).faces if set(F.generators) == set(gens))


def poset_graph(fp):
    g = nx.DiGraph()
    n = len(fp)
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i in range(n) for j in range(n) if i != j and fp.order[i][j])
    return g


monoids = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any),
                       min_size=1, max_size=k)).map(lambda gs: AffineMonoid(2, tuple(gs)))


def test_group_envelope():
    assert group_envelope(AffineMonoid(1, ((2,), (3,)))).basis == ((1,),)
    assert group_envelope(EMPTY).rank == 0
    L = group_envelope(AffineMonoid(2, ((1, 0), (1, 2))))
    assert L.contains((0, 2)) and not L.contains((0, 1))


def test_units_and_sharpening():
    assert units(N2).rank == 0 and sharpen(N2) == N2
    assert units(Z).rank == 1 and sharpen(Z).rank == 0
    P = AffineMonoid(2, ((1, 0), (-1, 0), (0, 1)))
    assert units(P).basis == ((1, 0),)
    assert sharpen(P) == N


def test_saturation():
    P = AffineMonoid(1, ((2,), (3,)))
    assert not P.is_saturated
    assert saturate(P) == N
    assert N2.is_saturated
    assert AffineMonoid(2, ((1, 0), (1, 2))).is_saturated
    assert not AffineMonoid(2, ((2, 0), (1, 1), (0, 2), (1, 0))).contains((0, 1))


def test_face_counts():
    assert [len(face_poset(free_monoid(n))) for n in (1, 2, 3)] == [2, 4, 8]
    fp = face_poset(N2)
    assert fp.bottom.generators == () and fp.top.generators == N2.generators


def test_face_rejects_non_faces():
    P = AffineMonoid(2, ((1, 0), (1, 1), (1, 2)))
    with pytest.raises(ValidationError):
        Face(P, frozenset({1}))


def test_localize():
    assert localize(N2, face_with(N2, [(1, 0)])) == AffineMonoid(2, ((1, 0), (-1, 0), (0, 1)))
    assert localize(N2, face_poset(N2).top).rank == 2
    assert units(localize(N2, face_poset(N2).top)).rank == 2
    assert localize(N2, face_poset(N2).bottom) == N2


def test_times_two_classification():
    c = classify_map(scalar_map(N, 2), primes=[2])
    assert c.local and c.exact.holds and c.kummer and c.l_kummer
    assert c.integral.holds is True
    assert c.saturated.holds is False
    assert c.saturated.witness == ((1,), (1,), 2)


def test_diagonal_classification():
    c = classify_map(MonoidMap(N, N2, ((1,), (1,))))
    assert c.local and not c.kummer
    assert c.integral.holds is True and c.saturated.holds is True


def test_inclusion_into_z_not_exact():
    assert is_exact(MonoidMap(N, Z, ((1,),))).holds is False


def test_l_kummer():
    assert is_l_kummer(scalar_map(N, 6), [2, 3])
    assert not is_l_kummer(scalar_map(N, 6), [2])
    assert not is_l_kummer(MonoidMap(N, N2, ((1,), (1,))), [2, 3])


def test_pushouts():
    f, g = MonoidMap(EMPTY, N, ((),)), MonoidMap(EMPTY, N2, ((), ()))
    assert pushout(f, g) == free_monoid(3)
    assert pushout(identity_map(N2), identity_map(N2)) == N2
    # (Z + Z)/(2,-2) has torsion Z/2; the torsion-free model is N
    po = pushout_with_maps(scalar_map(N, 2), scalar_map(N, 2))
    assert po.monoid == N and po.torsion == (2,)
    assert po.from_left.matrix == ((1,),) and po.from_right.matrix == ((1,),)


def test_kummer_face_transport_node():
    h = scalar_map(N, 3)
    fp = face_poset(N)
    assert kummer_face_transport(h, fp.bottom) == fp.bottom
    assert kummer_face_transport(h, fp.top) == fp.top
    # the node monoid scaled by 2: {(a, b) >= 0 : a = b mod 2}
    Q = AffineMonoid(2, ((2, 0), (1, 1), (0, 2)))
    k = MonoidMap(N2, Q, ((2, 0), (0, 2)))
    assert is_kummer(k)
    assert kummer_face_transport(k, face_with(N2, [(1, 0)])).generators == ((2, 0),)
    with pytest.raises(ValidationError):
        kummer_face_transport(MonoidMap(N, N2, ((1,), (1,))), face_poset(N).top)


def test_kummer_face_transport_is_order_isomorphism():
    for name, (h, _, _) in map_corpus().items():
        if not is_kummer(h):
            continue
        src, tgt = face_poset(h.source), face_poset(h.target)
        image = [tgt.index(kummer_face_transport(h, F)) for F in src.faces]
        assert sorted(image) == list(range(len(tgt))), name
        for i in range(len(src)):
            for j in range(len(src)):
                assert src.order[i][j] == tgt.order[image[i]][image[j]], name


def test_saturation_index():
    assert saturation_index(MonoidMap(N, N2, ((1,), (1,)))) == 1
    assert saturation_index(scalar_map(N, 2)) == 2
    n = saturation_index(scalar_map(N, 6))
    assert n == 6
    while n % 2 == 0:
        n //= 2
    while n % 3 == 0:
        n //= 3
    assert n == 1


def test_restriction_to_faces_keeps_flags():
    for name, (h, _, _) in map_corpus().items():
        c = classify_map(h)
        for Fq in face_poset(h.target).faces:
            r = classify_map(restrict_to_face(h, Fq), bound=c.bound)
            if c.integral.holds:
                assert r.integral.holds is True, (name, Fq.label())
            if c.saturated.holds:
                assert r.saturated.holds is True, (name, Fq.label())


def test_compositions():
    corpus = map_corpus()
    maps = [corpus[k][0] for k in ("x1", "x2", "x3", "diag", "incl", "d12", "sum", "proj", "id2",
                                   "x2N2")]
    sat = {f: classify_map(f, bound=4).saturated.holds for f in maps}
    for f in maps:
        for g in maps:
            if f.target != g.source:
                continue
            fg = f.then(g)
            if is_kummer(f) and is_kummer(g):
                assert is_kummer(fg)
            if sat[f] and sat[g]:
                assert classify_map(fg, bound=4).saturated.holds is True


@settings(max_examples=40, deadline=None)
@given(monoids)
def test_saturate_idempotent(P):
    S = saturate(P)
    assert saturate(S) == S
    assert S.is_saturated
    assert all(S.contains(g) for g in P.generators)


@settings(max_examples=40, deadline=None)
@given(monoids)
def test_faces_are_cone_determined(P):
    assert nx.is_isomorphic(poset_graph(face_poset(P)), poset_graph(face_poset(saturate(P))))


@settings(max_examples=40, deadline=None)
@given(monoids, st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_smallest_face_contains_vectors(P, coeffs):
    v = tuple(sum(c * g[k] for c, g in zip(coeffs, P.generators)) for k in range(2))
    F = smallest_face_containing(P, [v])
    assert F.contains(v)
    assert all(F <= G for G in face_poset(P).faces if G.contains(v))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_envelope_commutes_with_pushout(a, b, c):
    f = MonoidMap(N, N2, ((a,), (b,)))
    g = scalar_map(N, c)
    po = pushout_with_maps(f, g)
    # pushout of the envelopes: Z^3 / (a, b, -c), torsion-free part
    proj, torsion = lt.quotient_projection([(a, b, -c)], 3)
    assert group_envelope(po.monoid).rank == len(proj) == 2
    assert po.torsion == tuple(torsion)
