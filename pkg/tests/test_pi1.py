import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import complexes
from temperedkit.errors import ValidationError
from temperedkit.pi1 import fundamental_group, h1_rank, two_skeleton
from temperedkit.poly.complex import box_product, disjoint_union, point, representable
from temperedkit.poly.graphs import banana, cycle, glued_edges

FROZEN = {
    # name: (skeleton vertices, skeleton edges, h1, free rank of the simplified presentation)
    "point": (1, 0, 0, 0),
    "edge": (3, 2, 0, 0),
    "loop": (2, 2, 1, 1),
    "theta": (5, 6, 2, 2),
    "cycle3": (6, 6, 1, 1),
    "square": (9, 16, 0, 0),
}


def test_skeleta_and_groups():
    corpus = complexes()
    for name, (v, e, h, r) in FROZEN.items():
        C = corpus[name]
        sk = two_skeleton(C)
        assert (len(sk.vertices), len(sk.edges)) == (v, e), name
        pres = fundamental_group(C).presentation
        assert h1_rank(C) == h, name
        assert pres.is_free() and pres.rank == r, name


def test_triangles_close_up():
    sk = two_skeleton(representable((1, 1)))
    assert len(sk.triangles) == 8
    for w in sk.triangles:
        assert len(w) == 3
        heads = [sk.edges[abs(x) - 1][1] if x > 0 else sk.edges[abs(x) - 1][0] for x in w]
        tails = [sk.edges[abs(x) - 1][0] if x > 0 else sk.edges[abs(x) - 1][1] for x in w]
        assert heads == tails[1:] + tails[:1]
    assert sk.euler_characteristic() == 1


def test_disconnected_rejected():
    with pytest.raises(ValidationError, match="components"):
        fundamental_group(disjoint_union(point(), point()))


def test_torus():
    torus = complexes()["torus"]
    assert h1_rank(torus) == 2
    assert fundamental_group(torus).presentation.abelianization() == (2, ())
    assert not fundamental_group(torus).presentation.is_free()


def test_kunneth_rank_adds():
    parts = [cycle(1).quotient, representable((1,)), cycle(2).quotient]
    for i, C in enumerate(parts):
        for D in parts[i:]:
            assert h1_rank(box_product(C, D)) == h1_rank(C) + h1_rank(D)


def test_refinement_invariance():
    # cycle_n is a subdivision of the loop; banana graphs of the theta
    base = fundamental_group(cycle(1).quotient).presentation
    for n in range(2, 6):
        p = fundamental_group(cycle(n).quotient).presentation
        assert p.abelianization() == base.abelianization()
        assert p.is_free() and p.rank == base.rank
    subdivided_theta = glued_edges(4, [(0, 1), (0, 1), (0, 2), (2, 1)])
    assert fundamental_group(subdivided_theta.quotient).presentation.rank == 2


def test_path_words():
    g = fundamental_group(banana(3).quotient)
    for w in ((1,), (2,), (1, -2), (2, 2, 1)):
        assert g.path_word(g.loop_of(w)) == w


def connected(n_vertices, ends):
    parent = list(range(n_vertices))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a, b in ends:
        parent[find(a)] = find(b)
    return len({find(v) for v in {x for e in ends for x in e}}) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n), st.integers(0, n)), min_size=1, max_size=5)))
def test_random_graphs(ends):
    used = sorted({v for e in ends for v in e})
    relabel = {v: i for i, v in enumerate(used)}
    ends = [(relabel[a], relabel[b]) for a, b in ends]
    if not connected(len(used), ends):
        return
    C = glued_edges(len(ends), ends).quotient
    expected = len(ends) - len(used) + 1
    assert h1_rank(C) == expected
    pres = fundamental_group(C).presentation
    assert pres.is_free() and pres.rank == expected


def test_abelianized_rank_matches_h1_on_corpus():
    for name, C in complexes().items():
        assert fundamental_group(C).presentation.abelianization()[0] == h1_rank(C), name
