import pytest

from corpus import (N, N2, NODAL_CUBIC, NODE, NODE2, NODE_BLOCKS_12, NODE_PIECE, POINT_PIECE,
                    SMOOTH, TWO_NODES, V0, V1, complexes, node_cycle)
from temperedkit.errors import ValidationError
from temperedkit.fibration import (DescentDatum, KetPiece, Overlap, PolystableChart, c_global,
                                   c_of_piece, cospecialize_c, fiber_cell_type, glued_strata,
                                   standard_monoid, structure_map)
from temperedkit.monoid import AffineMonoid, MonoidMap, face_poset
from temperedkit.pi1 import h1_rank
from temperedkit.poly import lam
from temperedkit.poly.complex import (disjoint_union, find_isomorphism, is_interiorly_free,
                                      morphism_is_iso, point, poset_map, representable)
from temperedkit.poly.graphs import cycle
from temperedkit.strata import cospecialize_strata

CLOSED, OPEN = face_poset(N).bottom, face_poset(N).top


def iso(C, D):
    return find_isomorphism(C, D) is not None


def covered_node_piece(n):
    Q = standard_monoid(NODE)
    h = MonoidMap(Q, AffineMonoid(2, ((0, 1), (1, -n))), ((1, 0), (0, n)))
    return KetPiece((NODE,), h, (2, 3))


def test_standard_monoids():
    Q = standard_monoid(NODE)
    assert Q.rank == 2 and len(Q.generators) == 2 and Q.is_saturated
    assert iso(representable((1,)), c_of_piece(NODE_PIECE, CLOSED))
    assert standard_monoid(SMOOTH) == N
    assert standard_monoid(TWO_NODES).rank == 3
    # T_00 + T_01 = 2t is the A_1 singularity: three generators in rank 2
    a2 = standard_monoid(PolystableChart(N, ((1, (2,)),)))
    assert a2.rank == 2 and len(a2.generators) == 3


def test_fiber_cell_types():
    assert fiber_cell_type(NODE, CLOSED) == (1,)
    assert fiber_cell_type(NODE, OPEN) == (0,)
    assert fiber_cell_type(NODE_BLOCKS_12, CLOSED) == (1, 2)
    assert fiber_cell_type(SMOOTH, CLOSED) == (0,)
    faces = face_poset(N2).faces
    assert [fiber_cell_type(NODE2, F) for F in faces] == [(1, 1), (1,), (1,), (0,)]


def test_pieces():
    assert iso(c_of_piece(NODE_PIECE, CLOSED), representable((1,)))
    assert iso(c_of_piece(covered_node_piece(2), CLOSED), representable((1,)))
    assert len(c_of_piece(POINT_PIECE, CLOSED)) == 1
    with pytest.raises(ValidationError):
        KetPiece((NODE,), covered_node_piece(5).covering, (2, 3))
    with pytest.raises(ValidationError):
        PolystableChart(N, ((1, (-1,)),))


def test_nodal_cubic_is_the_loop():
    C = c_global(NODAL_CUBIC)
    assert iso(C, cycle(1).quotient)
    assert h1_rank(C) == 1
    assert len(c_global(NODAL_CUBIC, OPEN)) == 1


def test_node_cycles():
    for n in range(2, 6):
        assert iso(c_global(node_cycle(n)), cycle(n).quotient)


def test_disjoint_pieces():
    d = DescentDatum((NODE_PIECE, POINT_PIECE, NODE_PIECE))
    expected = disjoint_union(representable((1,)), point(), representable((1,)))
    assert iso(c_global(d), expected)


def test_bad_overlaps_rejected():
    with pytest.raises(ValidationError):
        DescentDatum((NODE_PIECE,), (Overlap(0, 1, POINT_PIECE, V0, V1),))
    with pytest.raises(ValidationError):
        DescentDatum((NODE_PIECE,), (Overlap(0, 0, POINT_PIECE, V0, lam.identity((1,))),))


def test_refinement_invariance():
    # add a smooth piece sitting on the node's first branch
    refined = DescentDatum((NODE_PIECE, POINT_PIECE),
                           NODAL_CUBIC.overlaps + (Overlap(0, 1, POINT_PIECE, V0, lam.identity((0,))),))
    assert iso(c_global(refined), c_global(NODAL_CUBIC))
    for n in (2, 3):
        base = node_cycle(n)
        extra = tuple(Overlap(i, n + i, POINT_PIECE, V1, lam.identity((0,))) for i in range(n))
        refined = DescentDatum(base.pieces + (POINT_PIECE,) * n, base.overlaps + extra)
        assert iso(c_global(refined), c_global(base))


def test_degenerating_node_family():
    f = cospecialize_c(NODAL_CUBIC, CLOSED, OPEN)
    assert len(f.target) == 1 and not morphism_is_iso(f)
    g = cospecialize_c(DescentDatum((NODE_PIECE,)), CLOSED, OPEN)
    s = cospecialize_strata(structure_map(NODE), CLOSED, OPEN)
    assert set(poset_map(g)) == {0} and set(s.mapping) == {0}


def test_same_stratum_gives_isomorphisms():
    for d in (NODAL_CUBIC, node_cycle(3), DescentDatum((KetPiece((NODE2,)),))):
        for F in face_poset(d.base).faces:
            f = cospecialize_c(d, F, F)
            assert morphism_is_iso(f)
            if is_interiorly_free(f.target):
                assert f.preserves_nondegenerate()


def test_two_parameter_composite_law():
    d = DescentDatum((KetPiece((NODE2,)),))
    faces = face_poset(N2).faces
    for a in faces:
        for b in faces:
            for c in faces:
                if a <= b <= c:
                    direct = cospecialize_c(d, a, c)
                    assert cospecialize_c(d, a, b).then(cospecialize_c(d, b, c)).images == direct.images


def test_covering_transport_commutes():
    plain = DescentDatum((NODE_PIECE,), NODAL_CUBIC.overlaps)
    covered = DescentDatum((covered_node_piece(2),), NODAL_CUBIC.overlaps)
    assert c_global(plain).text() == c_global(covered).text()
    assert cospecialize_c(plain, CLOSED, OPEN).images == cospecialize_c(covered, CLOSED, OPEN).images


def test_o_matches_glued_strata():
    for d in (NODAL_CUBIC, node_cycle(2), node_cycle(4)):
        labels, _ = glued_strata(d)
        # one node and one branch per piece
        assert len(labels) == 2 * len(d.pieces)


def test_corpus_loop_agrees():
    assert c_global(NODAL_CUBIC).text() == complexes()["loop"].text()
