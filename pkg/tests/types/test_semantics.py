import pytest
from hypothesis import given

from msolift.errors import ContractError
from msolift.logic.evaluate import evaluate
from msolift.logic.library import sentence
from msolift.types.engine import cmso_type, mso_type
from msolift.types.registry import TypeRegistry
from msolift.types.semantics import holds, satisfies
from tests.graphs import cycle, graphs, path, star
from tests.oracles import bipartite


@pytest.fixture
def registry() -> TypeRegistry:
    return TypeRegistry()


class TestSatisfies:
    @given(graphs(max_vertices=4))
    def test_agrees_with_evaluation(self, G):
        registry = TypeRegistry()
        theta = mso_type(G, (), 2, registry=registry)
        for name in ("has_edge", "has_isolated", "no_isolated"):
            assert satisfies(theta, sentence(name), registry) == evaluate(G, {}, sentence(name))

    def test_counting_sentence(self, registry):
        assert satisfies(cmso_type(cycle(4), (), 2, 2, registry=registry), sentence("even_parity"), registry)
        assert not satisfies(cmso_type(path(3), (), 2, 2, registry=registry), sentence("even_parity"), registry)

    @pytest.mark.parametrize("G", [cycle(3), cycle(4), path(4), star(3)], ids=["c3", "c4", "p4", "claw"])
    def test_bipartite_at_rank_three(self, registry, G):
        theta = mso_type(G, (), 3, registry=registry)
        assert satisfies(theta, sentence("bipartite"), registry) == bipartite(G)
        assert holds(theta, sentence("bipartite"), registry) == bipartite(G)

    def test_ordered_sentence(self, registry):
        theta = cmso_type(path(2), (), 2, 1, (1, 0), registry)
        assert satisfies(theta, sentence("has_minimum"), registry)

    def test_rank_too_high(self, registry):
        theta = mso_type(path(2), (), 2, registry=registry)
        with pytest.raises(ContractError, match="rank"):
            satisfies(theta, sentence("bipartite"), registry)

    def test_modulus_too_large(self, registry):
        theta = mso_type(path(2), (), 2, registry=registry)
        with pytest.raises(ContractError, match="counting bound"):
            satisfies(theta, sentence("even_parity"), registry)

    def test_order_on_unordered_type(self, registry):
        theta = mso_type(path(2), (), 2, registry=registry)
        with pytest.raises(ContractError, match="unordered"):
            satisfies(theta, sentence("has_minimum"), registry)

    def test_needs_a_sentence_type(self, registry):
        theta = mso_type(path(2), [{0}], 2, registry=registry)
        with pytest.raises(ContractError, match="set parameters"):
            satisfies(theta, sentence("has_edge"), registry)

    def test_unregistered(self, registry):
        with pytest.raises(ContractError, match="Unregistered"):
            satisfies(99, sentence("has_edge"), registry)


class TestHolds:
    @given(graphs(max_vertices=4))
    def test_payload_agrees_with_the_representative(self, G):
        registry = TypeRegistry()
        theta = cmso_type(G, (), 2, 2, registry=registry)
        for name in ("has_edge", "no_isolated", "even_parity", "has_isolated"):
            phi = sentence(name)
            assert holds(theta, phi, registry) == satisfies(theta, phi, registry)

    def test_ordered_payload(self, registry):
        theta = cmso_type(path(3), (), 2, 1, (2, 0, 1), registry)
        assert holds(theta, sentence("has_minimum"), registry)
        assert holds(theta, sentence("order_total"), registry)

    def test_checks_the_signature(self, registry):
        theta = mso_type(path(2), (), 2, registry=registry)
        with pytest.raises(ContractError, match="rank"):
            holds(theta, sentence("bipartite"), registry)
