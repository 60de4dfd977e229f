import pytest

from msolift.decomp.connectivity import (
    MinorMode,
    TwMode,
    complete_bipartite,
    disjoint_paths,
    improve,
    improve_closure,
    minor_separability_bound,
    separability_bound,
    separability_check,
    tw_separability_bound,
    universal_pair_family,
)
from msolift.errors import DomainError
from tests.graphs import complete, cycle, path


class TestDisjointPaths:
    def test_counts(self, c4, k4):
        assert disjoint_paths(c4, 0, 2) == 2
        assert disjoint_paths(k4, 0, 1) == 3
        assert disjoint_paths(path(4), 0, 3) == 1

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_universal_pair(self, n):
        G = universal_pair_family(n)
        assert disjoint_paths(G, 3 * n, 3 * n + 1) == 3 * n
        assert not G.adjacent(3 * n, 3 * n + 1)

    def test_bad_vertices(self):
        with pytest.raises(DomainError):
            disjoint_paths(path(3), 1, 1)
        with pytest.raises(DomainError, match="Unknown vertex"):
            disjoint_paths(path(3), 0, 9)

    def test_family_index(self):
        with pytest.raises(DomainError):
            universal_pair_family(0)


class TestImprove:
    def test_cycle_gets_chords(self, c4):
        assert improve(c4, 1).edges == c4.edges | {(0, 2), (1, 3)}
        assert improve(c4, 2).edges == c4.edges

    def test_universal_pair_is_joined(self):
        G = universal_pair_family(1)
        assert improve(G, 2).adjacent(3, 4)
        assert improve(G, 3).edges == G.edges

    def test_closure_is_a_fixpoint(self):
        G = cycle(6)
        closed = improve_closure(G, 1)
        assert improve(closed, 1).edges == closed.edges
        assert closed.edges >= G.edges


class TestSeparability:
    def test_bounds(self):
        assert tw_separability_bound(2, 1) == 2
        assert tw_separability_bound(3, 2) == 7
        assert minor_separability_bound(2, 3) == 1
        assert minor_separability_bound(3, 2) == 1
        assert minor_separability_bound(4, 2) == 7
        assert separability_bound(TwMode(1), 0) == 1
        assert separability_bound(MinorMode(2), 4) == 7

    def test_cut_vertex_of_a_path(self):
        result = separability_check(path(3), frozenset({1}), TwMode(1))
        assert result.components == 2
        assert result.bound == 1
        assert not result.ok
        assert result.precondition_ok is False
        assert "atom" in result.detail

    def test_clique(self, k4):
        result = separability_check(k4, frozenset({0, 1}), TwMode(3))
        assert result.ok
        assert result.precondition_ok is True

    def test_minor_mode(self, k4):
        result = separability_check(k4, frozenset({0}), MinorMode(3))
        assert result.ok
        assert result.precondition_ok is True
        assert separability_check(cycle(5), frozenset({0}), MinorMode(2)).precondition_ok is False

    def test_separator_outside(self):
        with pytest.raises(DomainError):
            separability_check(path(3), frozenset({7}), TwMode(1))

    def test_complete_bipartite(self):
        G = complete_bipartite(2, 3)
        assert len(G.edges) == 6
        assert not G.adjacent(0, 1)
        assert complete(2).edges == complete_bipartite(1, 1).edges
