import os

import pytest

from temperedkit.dot import hasse_edges, poset_dot, poset_map_dot
from temperedkit.errors import ValidationError
from temperedkit.pi1 import h1_rank
from temperedkit.poly.complex import find_isomorphism
from temperedkit.poly.graphs import cycle
from temperedkit.scene import Scene, SceneError, parse_face

SCENE = os.path.join(os.path.dirname(__file__), os.pardir, "scenes", "corpus.scene")


@pytest.fixture(scope="module")
def scene():
    return Scene.from_path(SCENE)


def test_every_entity_builds(scene):
    builders = {"monoid": scene.monoid, "map": scene.map, "chart": scene.chart,
                "piece": scene.piece, "descent": scene.descent, "complex": scene.complex,
                "group": scene.group, "action": scene.action}
    for kind, build in builders.items():
        for name in scene.names(kind):
            build(name)


def test_hand_built_loop_matches_builtin(scene):
    assert find_isomorphism(scene.complex("hand_loop"), cycle(1).quotient) is not None
    assert find_isomorphism(scene.complex("cubic"), scene.complex("loop")) is not None
    assert h1_rank(scene.complex("torus")) == 2


def test_scene_errors():
    with pytest.raises(SceneError, match="circular"):
        Scene("complex a\n  box a a\nend\n").complex("a")
    with pytest.raises(SceneError, match="unknown reference"):
        Scene("map f\n  source P\n  scalar 2\nend\n").map("f")
    with pytest.raises(SceneError):
        Scene("monoid N\n  free 1\nend\nmonoid N\n  free 2\nend\n")
    with pytest.raises(ValidationError):
        Scene("map f\n  source N\n  row 1\nend\nmonoid N\n  free 1\nend\n").map("f")


def test_parse_face(scene):
    N2 = scene.monoid("N2")
    assert parse_face(N2, "closed").generators == ()
    assert len(parse_face(N2, "open").generators) == 2
    assert parse_face(N2, "-").generators == ()
    assert len(parse_face(N2, "0").generators) == 1
    with pytest.raises(ValidationError):
        parse_face(N2, "7")


def test_hasse_diagram_of_a_chain():
    leq = [[i <= j for j in range(4)] for i in range(4)]
    assert hasse_edges(4, leq) == [(0, 1), (1, 2), (2, 3)]
    text = poset_dot("chain", ["a", "b", "c", "d"], leq)
    assert text.startswith('digraph "chain" {') and text.count("->") == 3


def test_poset_map_dot():
    leq = [[True, True], [False, True]]
    text = poset_map_dot("m", ["x", "y"], leq, ["z"], [[True]], [0, 0])
    assert text.count("style=dashed") == 2
    assert "cluster_s" in text and "cluster_t" in text
