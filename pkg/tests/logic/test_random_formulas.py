from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from msolift.core.structures import GRAPH_VOCABULARY, Graph
from msolift.logic.evaluate import evaluate
from msolift.logic.formulas import free_variables, rank
from msolift.logic.parser import format_formula, parse_formula
from msolift.types.engine import cmso_type, mso_type
from msolift.types.registry import TypeRegistry
from msolift.types.semantics import holds
from tests.graphs import complete, cycle, formulas, graphs, path, star
from tests.oracles import naive_evaluate


def corpus() -> list[Graph]:
    empty = [Graph.from_edges(range(n), []) for n in range(1, 5)]
    return empty + [path(2), path(3), path(4), cycle(3), cycle(4), complete(4), star(3)]


class TestFormulaStrategy:
    @given(formulas(max_rank=2))
    def test_draws_are_sentences_within_rank(self, phi):
        assert not free_variables(phi)
        assert rank(phi) <= 2

    @given(formulas(max_rank=3, ordered=True, counting=True))
    def test_print_then_parse_gives_the_formula_back(self, phi):
        assert parse_formula(format_formula(phi), GRAPH_VOCABULARY) == phi


class TestAgainstNaiveSemantics:
    @given(graphs(max_vertices=4), formulas(max_rank=3, ordered=True, counting=True))
    def test_evaluate_agrees_with_naive_semantics(self, G, phi):
        order = G.elements
        assert evaluate(G, {}, phi, order=order) == naive_evaluate(G, phi, order)

    @given(graphs(max_vertices=4), formulas(max_rank=2, counting=True))
    def test_payload_holds_agrees_with_evaluate(self, G, phi):
        registry = TypeRegistry()
        theta = cmso_type(G, (), 2, 3, registry=registry)
        assert holds(theta, phi, registry) == evaluate(G, {}, phi)

    @given(graphs(max_vertices=4), formulas(max_rank=2, ordered=True))
    def test_ordered_payload_holds_agrees_with_evaluate(self, G, phi):
        registry = TypeRegistry()
        order = tuple(reversed(G.elements))
        theta = mso_type(G, (), 2, order=order, registry=registry)
        assert holds(theta, phi, registry) == evaluate(G, {}, phi, order=order)


class TestTypeDeterminesTruth:
    @pytest.fixture(scope="class")
    def classes(self):
        registry = TypeRegistry()
        found = {}
        for q in (1, 2):
            grouped = defaultdict(list)
            for G in corpus():
                grouped[mso_type(G, (), q, registry=registry)].append(G)
            found[q] = list(grouped.values())
        return found

    def test_corpus_has_nontrivial_classes(self, classes):
        assert any(len(members) > 1 for members in classes[1])

    @given(data=st.data())
    @pytest.mark.parametrize("q", [1, 2])
    def test_equal_types_agree_on_every_sentence(self, classes, q, data):
        phi = data.draw(formulas(max_rank=q))
        for members in classes[q]:
            assert len({evaluate(G, {}, phi) for G in members}) == 1


class TestRelabeling:
    @given(graphs(max_vertices=4), formulas(max_rank=2, ordered=True, counting=True), st.randoms())
    def test_evaluate_is_invariant(self, G, phi, rnd):
        images = [10 + v for v in G.elements]
        rnd.shuffle(images)
        mapping = dict(zip(G.elements, images))
        H = G.relabel(mapping)
        order = G.elements
        assert evaluate(G, {}, phi, order=order) == evaluate(H, {}, phi, order=[mapping[v] for v in order])

    @given(graphs(max_vertices=4), st.randoms())
    def test_type_is_invariant(self, G, rnd):
        images = list(G.elements)
        rnd.shuffle(images)
        mapping = dict(zip(G.elements, images))
        registry = TypeRegistry()
        assert mso_type(G, (), 2, registry=registry) == mso_type(G.relabel(mapping), (), 2, registry=registry)
