import pytest

from corpus import NODAL_CUBIC, complexes
from temperedkit.errors import CommutingSquareError, UnsupportedInput, ValidationError
from temperedkit.fibration import c_global, cospecialize_c
from temperedkit.groups import GroupHom, cyclic_product, tietze, word_text
from temperedkit.monoid import face_poset
from temperedkit.pi1 import fundamental_group
from temperedkit.poly.complex import identity_morphism
from temperedkit.poly.graphs import banana, cycle, summand_map
from temperedkit.tempered import (Connecting, GaloisActionDatum, TowerLevel, build_tower,
                                  check_isomorphism, collapse_maps, cospecialize_tower, good_tower, induced_hom,
                                  lift_extension, presentation_hash, tate_level, tate_tower,
                                  trivial_action)


def rotation_action(n):
    q = cycle(n)
    rot = summand_map(q, q, [(i + 1) % n for i in range(n)])
    return q, GaloisActionDatum(cyclic_product([n]), q.quotient, [rot])


def test_trivial_group_gives_pi1():
    for name in ("loop", "theta", "cycle3", "point", "square"):
        C = complexes()[name]
        e = lift_extension(C, trivial_action(C))
        assert e.presentation.text() == fundamental_group(C).presentation.text()
        assert e.coset_index() == 1


def test_free_rotation_gives_z():
    for n in (2, 3, 4, 5):
        q, act = rotation_action(n)
        e = lift_extension(q.quotient, act)
        assert e.presentation.abelianization() == (1, ())
        assert tietze(e.presentation).presentation.is_free()
        assert tietze(e.presentation).presentation.rank == 1
        assert e.coset_index() == n
        assert e.quotient(e.kernel_generators[0]) == act.group.identity


def test_tate_levels():
    for m in (2, 3, 5):
        level, _ = tate_level(m)
        e = lift_extension(level.action.complex, level.action)
        assert e.presentation.abelianization() == (1, (m,))
        assert e.is_abelian() and e.kernel_rank == 1


def test_unsupported_for_non_graph_complexes():
    torus = complexes()["torus"]
    with pytest.raises(UnsupportedInput):
        lift_extension(torus, trivial_action(torus))


def test_bad_actions_rejected():
    q = cycle(3)
    rot = summand_map(q, q, [1, 2, 0])
    with pytest.raises(ValidationError):
        GaloisActionDatum(cyclic_product([2]), q.quotient, [rot])
    with pytest.raises(ValidationError):
        GaloisActionDatum(cyclic_product([2, 2]), q.quotient, [rot])


def test_connecting_map_wraps_twice():
    t = tate_tower([2, 4])
    h = t.homs[0]
    names = h.target.presentation.generators
    assert [word_text(w, names) for w in h.images] == ["e3 e3", "a", "b"]


def test_tower_report():
    t = tate_tower([2, 4])
    rows = t.report()
    assert [(r[0], r[1], r[2]) for r in rows] == [("tate2", 4, 1), ("tate4", 16, 1)]
    assert rows == tate_tower([2, 4]).report()
    assert all(r[3] == presentation_hash(e.presentation) for r, e in zip(rows, t.extensions))
    g = good_tower([2, 4, 8])
    assert [(r[1], r[2]) for r in g.report()] == [(4, 0), (16, 0), (64, 0)]


def test_tower_coherence():
    for t in (tate_tower([2, 4, 8]), good_tower([3, 6]), tate_tower([3, 6])):
        for i, h in enumerate(t.homs):
            c = t.connecting[i]
            for k, w in enumerate(h.images):
                assert h.target.quotient(w) == c.group_map(h.source.quotient_images[k])


def test_single_level_tower():
    level, _ = tate_level(3)
    t = build_tower([level])
    assert t.homs == [] and t.extensions[0].presentation.abelianization() == (1, (3,))
    with pytest.raises(ValidationError):
        build_tower([])
    with pytest.raises(ValidationError):
        tate_tower([2, 3])


def test_non_equivariant_connecting_map_rejected():
    lo, qlo = tate_level(2)
    hi, qhi = tate_level(4)
    G, H = hi.action.group, lo.action.group
    swapped = GroupHom(G, H, (H.generators[1], H.generators[0]))
    F = summand_map(qhi, qlo, [0, 1, 0, 1])
    with pytest.raises(CommutingSquareError):
        build_tower([lo, hi], [Connecting(F, swapped)])


def test_cospecialization_functoriality():
    ms = (2, 4)
    tate, good = tate_tower(ms), good_tower(ms)
    rots = []
    for m in ms:
        q = cycle(m)
        rots.append(summand_map(q, q, [(i + 1) % m for i in range(m)]))
    first = cospecialize_tower(tate, tate, rots)
    second = cospecialize_tower(tate, good, collapse_maps(tate))
    direct = cospecialize_tower(tate, good, [F.then(G) for F, G in zip(rots, collapse_maps(tate))])
    for h1, h2, h in zip(first.homs, second.homs, direct.homs):
        e = h.target
        els = e.generator_elements()
        for w1, w in zip(h1.images, h.images):
            assert e.model.evaluate(els, h2.apply(w1)) == e.model.evaluate(els, w)
    assert all(first.isomorphisms)
    assert not any(second.isomorphisms)


def test_node_family_one_level():
    closed, open_ = face_poset(NODAL_CUBIC.base).faces
    C1, C2 = c_global(NODAL_CUBIC, closed), c_global(NODAL_CUBIC, open_)
    t1 = build_tower([TowerLevel("closed", trivial_action(C1))])
    t2 = build_tower([TowerLevel("open", trivial_action(C2))])
    F = cospecialize_c(NODAL_CUBIC, closed, open_)
    c = cospecialize_tower(t1, t2, [F])
    # Z -> 1: the vanishing cycle dies
    assert t1.extensions[0].presentation.rank == 1
    assert c.homs[0].images == ((),)
    assert c.isomorphisms == [False]
    same = cospecialize_tower(t1, t1, [identity_morphism(C1)])
    assert same.isomorphisms == [True]


def test_induced_hom_on_theta_automorphism():
    theta = banana(3)
    C = theta.quotient
    swap = summand_map(theta, theta, [1, 0, 2])
    e = lift_extension(C, trivial_action(C))
    q = GroupHom(e.group, e.group, e.group.generators)
    h = induced_hom(e, e, swap, q)
    assert h.images != tuple((i,) for i in range(1, 3))
    assert check_isomorphism(h)
