import pytest
from hypothesis import assume, given

from msolift.core.structures import Graph
from msolift.errors import ContractError
from msolift.logic.formulas import free_variables, rank
from msolift.types.engine import cmso_type, mso_type
from msolift.types.registry import TypeRegistry
from msolift.types.witness import confirm_separation, separating_sentence
from tests.graphs import complete, cycle, graphs, path


@pytest.fixture
def registry() -> TypeRegistry:
    return TypeRegistry()


class TestSeparatingSentence:
    @pytest.mark.parametrize(
        "first, second",
        [
            (path(2), Graph.from_edges(range(2), [])),
            (path(3), complete(3)),
            (path(1), path(2)),
        ],
        ids=["edge", "triangle", "size"],
    )
    def test_separates_both_ways(self, registry, first, second):
        a = mso_type(first, (), 2, registry=registry)
        b = mso_type(second, (), 2, registry=registry)
        for theta, other in ((a, b), (b, a)):
            phi = separating_sentence(theta, other, registry)
            assert not free_variables(phi)
            assert rank(phi) <= 2
            assert confirm_separation(phi, theta, other, registry)

    @given(graphs(max_vertices=3), graphs(max_vertices=3))
    def test_any_two_distinct_types(self, G, H):
        registry = TypeRegistry()
        a = mso_type(G, (), 2, registry=registry)
        b = mso_type(H, (), 2, registry=registry)
        assume(a != b)
        assert confirm_separation(separating_sentence(a, b, registry), a, b, registry)

    def test_counting_types(self, registry):
        a = cmso_type(cycle(4), (), 2, 2, registry=registry)
        b = cmso_type(path(3), (), 2, 2, registry=registry)
        phi = separating_sentence(a, b, registry)
        assert confirm_separation(phi, a, b, registry)

    def test_set_parameters_stay_free(self, registry):
        end = cmso_type(path(3), [{0}], 1, 1, registry=registry)
        middle = cmso_type(path(3), [{1}], 1, 1, registry=registry)
        phi = separating_sentence(end, middle, registry)
        assert free_variables(phi) <= {"X1"}
        assert confirm_separation(phi, end, middle, registry)

    def test_equal_types(self, registry):
        theta = mso_type(path(2), (), 1, registry=registry)
        with pytest.raises(ContractError, match="itself"):
            separating_sentence(theta, theta, registry)

    def test_signatures_must_match(self, registry):
        a = mso_type(path(2), (), 1, registry=registry)
        b = mso_type(path(2), (), 2, registry=registry)
        with pytest.raises(ContractError, match="signatures"):
            separating_sentence(a, b, registry)

    def test_cycles_three_and_four_at_rank_three(self, registry):
        c3 = mso_type(cycle(3), (), 3, registry=registry)
        c4 = mso_type(cycle(4), (), 3, registry=registry)
        assert c3 != c4
        for theta, other in ((c3, c4), (c4, c3)):
            phi = separating_sentence(theta, other, registry)
            assert rank(phi) <= 3
            assert confirm_separation(phi, theta, other, registry)
