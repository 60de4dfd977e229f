import pytest

from msolift.core.decomposition import NodeKind, metrics, validate_decomposition
from msolift.core.structures import Graph
from msolift.decomp.triconnected import TorsoClass, three_connected_decomposition, torso_class
from tests.graphs import complete, cycle, diamond, path, two_triangles, wheel


class TestTorsoClass:
    @pytest.mark.parametrize(
        "G, expected",
        [
            (Graph.from_edges([], []), TorsoClass.EMPTY),
            (path(1), TorsoClass.VERTEX),
            (path(2), TorsoClass.EDGE),
            (Graph.from_edges(range(2), []), TorsoClass.NONE),
            (cycle(5), TorsoClass.CYCLE),
            (complete(4), TorsoClass.THREE_CONNECTED),
            (wheel(4), TorsoClass.THREE_CONNECTED),
            (path(3), TorsoClass.NONE),
            (diamond(), TorsoClass.NONE),
        ],
        ids=["empty", "vertex", "edge", "non-edge", "cycle", "k4", "wheel", "path", "diamond"],
    )
    def test_classes(self, G, expected):
        assert torso_class(G) == expected


NAMED = {
    "diamond": diamond(),
    "path": path(4),
    "triangles": two_triangles(),
    "wheel": wheel(4),
    "bowtie": Graph.from_edges(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
    "theta": Graph.from_edges(range(5), [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)]),
}


class TestThreeConnectedDecomposition:
    @pytest.mark.parametrize("name", sorted(NAMED))
    def test_valid_with_adhesion_two(self, name):
        G = NAMED[name]
        result = three_connected_decomposition(G)
        assert validate_decomposition(G, result.decomposition).ok
        assert metrics(result.decomposition).adhesion <= 2
        for t, kind in result.decomposition.kinds.items():
            if kind == NodeKind.ATOM:
                assert result.classes[t] != TorsoClass.NONE

    def test_diamond_splits_at_the_shared_edge(self):
        result = three_connected_decomposition(diamond())
        D = result.decomposition
        separators = [t for t in D.nodes if D.kinds[t] == NodeKind.SEPARATOR]
        assert [D.bags[t] for t in separators] == [{1, 2}]
        atoms = sorted(sorted(D.bags[t]) for t in D.nodes if D.kinds[t] == NodeKind.ATOM)
        assert atoms == [[0, 1, 2], [1, 2, 3]]
        assert {result.classes[t] for t in D.nodes if D.kinds[t] == NodeKind.ATOM} == {TorsoClass.CYCLE}

    def test_three_connected_graph_is_one_node(self):
        result = three_connected_decomposition(wheel(4))
        assert result.decomposition.nodes == {0}
        assert result.attributes() == {0: {"torso": "three_connected"}}

    def test_empty_graph(self):
        result = three_connected_decomposition(Graph.from_edges([], []))
        assert result.classes == {0: TorsoClass.EMPTY}
