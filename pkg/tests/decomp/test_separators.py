from msolift.core.structures import Graph
from msolift.decomp.separators import (
    CliqueSeparator,
    clique_separators,
    components,
    is_atom,
    is_c_atom,
    is_connected,
    separation_witness,
)
from tests.graphs import complete, cycle, diamond, path, two_triangles


class TestComponents:
    def test_sorted_by_smallest_vertex(self):
        G = Graph.from_edges(range(5), [(3, 4), (0, 2)])
        assert components(G) == [frozenset({0, 2}), frozenset({1}), frozenset({3, 4})]
        assert not is_connected(G)
        assert is_connected(path(3))

    def test_witness_pairs_smallest_vertices(self):
        assert separation_witness(path(5), frozenset({2})) == (0, 3)
        assert separation_witness(cycle(4), frozenset({0})) is None


class TestCliqueSeparators:
    def test_cut_vertex(self):
        assert clique_separators(path(3), 1) == [CliqueSeparator(frozenset({1}), (0, 2))]

    def test_edge_separator(self, k4_minus_edge):
        assert clique_separators(k4_minus_edge, 1) == []
        found = clique_separators(k4_minus_edge, 2)
        assert [S.vertices for S in found] == [frozenset({1, 2})]
        assert found[0].witness == (0, 3)
        assert found[0].size == 2

    def test_cycle_has_none(self, c4):
        assert clique_separators(c4, 4) == []

    def test_empty_separator_first(self):
        found = clique_separators(two_triangles(), 3)
        assert found[0].vertices == frozenset()
        assert found[0].witness == (0, 3)

    def test_sorted_by_size_then_members(self):
        found = clique_separators(path(5), 2)
        assert [sorted(S.vertices) for S in found] == [[1], [2], [3], [1, 2], [2, 3]]


class TestAtoms:
    def test_atoms(self, k4, c4):
        assert is_atom(k4)
        assert is_atom(c4)
        assert not is_atom(diamond())
        assert is_c_atom(diamond(), 1)
        assert is_atom(Graph.from_edges([], []))

    def test_disconnected_graph_is_no_atom(self):
        assert not is_c_atom(Graph.from_edges(range(2), []), 0)
        assert is_c_atom(complete(1), 0)
