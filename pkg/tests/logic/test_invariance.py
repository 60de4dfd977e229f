import pytest

from msolift.config import override_settings
from msolift.core.structures import Graph
from msolift.errors import CapacityError, ContractError
from msolift.logic.invariance import check_order_invariance
from msolift.logic.library import ORDER_INVARIANT, sentence
from msolift.logic.parser import parse_formula
from tests.graphs import path


@pytest.fixture
def edge_and_isolated() -> Graph:
    return Graph.from_edges(range(3), [(0, 1)])


class TestOrderInvariance:
    def test_witness_is_the_first_disagreeing_order(self, edge_and_isolated):
        result = check_order_invariance(sentence("min_isolated"), edge_and_isolated)
        assert not result.invariant
        assert result.witness == ((0, 1, 2), (2, 0, 1))
        assert result.orders_checked == 5

    def test_invariant_sentence_checks_every_order(self, edge_and_isolated):
        result = check_order_invariance(sentence("has_minimum"), edge_and_isolated)
        assert result.invariant
        assert result.witness is None
        assert result.orders_checked == 6

    def test_sentence_without_order_is_trivially_invariant(self):
        result = check_order_invariance(sentence("bipartite"), path(9))
        assert result.invariant
        assert result.orders_checked == 0

    @pytest.mark.parametrize("name", sorted(ORDER_INVARIANT))
    def test_library_sentences_are_invariant(self, name):
        assert check_order_invariance(sentence(name), path(3)).invariant

    def test_cap_argument(self):
        with pytest.raises(CapacityError) as info:
            check_order_invariance(sentence("has_minimum"), path(4), cap=3)
        assert info.value.cap == 3

    def test_cap_from_settings(self):
        override_settings(order_cap=2)
        with pytest.raises(CapacityError):
            check_order_invariance(sentence("has_minimum"), path(3))

    def test_needs_a_sentence(self):
        phi = parse_formula("all y. x <= y", path(1).vocabulary)
        with pytest.raises(ContractError, match="free"):
            check_order_invariance(phi, path(2))
