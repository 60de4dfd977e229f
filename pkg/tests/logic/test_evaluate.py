import pytest
from hypothesis import given

from msolift.core.structures import GRAPH_VOCABULARY
from msolift.errors import DomainError, EvaluationError
from msolift.logic.evaluate import evaluate
from msolift.logic.formulas import cmso_rank, free_variables, is_fo, is_sentence, moduli, rank, symbols
from msolift.logic.library import sentence
from msolift.logic.parser import parse_formula
from msolift.types.engine import with_order
from tests.graphs import complete, cycle, graphs, path, star
from tests.oracles import bipartite, connected, has_isolated, has_triangle


def parse(text):
    return parse_formula(text, GRAPH_VOCABULARY)


class TestEvaluate:
    def test_free_variables_need_values(self):
        with pytest.raises(EvaluationError, match="Unbound"):
            evaluate(path(2), {}, parse("E(x,y)"))

    def test_order_needed_for_le(self):
        with pytest.raises(EvaluationError, match="no order"):
            evaluate(path(2), {}, sentence("has_minimum"))

    def test_order_from_relation(self):
        A = with_order(path(3), (2, 0, 1))
        assert evaluate(A, {"x": 2}, parse("all y. x <= y"))

    def test_bad_order(self):
        with pytest.raises(DomainError):
            evaluate(path(3), {}, sentence("has_minimum"), order=(0, 1))

    def test_set_atoms_on_singletons(self):
        G = path(3)
        assert evaluate(G, {"X": {0}, "Y": {1}}, parse("E(X,Y) & sing(X)"))
        assert not evaluate(G, {"X": {0, 1}, "Y": {1}}, parse("E(X,Y)"))
        assert evaluate(G, {"X": {0}, "Y": {0, 2}}, parse("X sub Y & ~(Y sub X)"))

    def test_counting(self):
        assert evaluate(cycle(4), {}, sentence("even_parity"))
        assert not evaluate(path(3), {}, sentence("even_parity"))

    def test_even_length_under_any_order(self):
        for order in [(0, 1, 2, 3), (3, 1, 0, 2)]:
            assert evaluate(path(4), {}, sentence("even_length"), order)
        assert not evaluate(path(3), {}, sentence("even_length"), (2, 0, 1))

    @given(graphs(max_vertices=5))
    def test_graph_sentences_match_direct_checks(self, G):
        assert evaluate(G, {}, sentence("bipartite")) == bipartite(G)
        assert evaluate(G, {}, sentence("connected")) == connected(G)
        assert evaluate(G, {}, sentence("has_isolated")) == has_isolated(G)
        assert evaluate(G, {}, sentence("has_triangle")) == has_triangle(G)

    def test_named_examples(self):
        assert not evaluate(complete(3), {}, sentence("bipartite"))
        assert evaluate(star(3), {}, sentence("bipartite"))


class TestFormulaMeasures:
    def test_rank_and_counting(self):
        phi = sentence("even_parity")
        assert rank(phi) == 2
        assert moduli(phi) == {2}
        assert cmso_rank(phi) == (2, 2)
        assert cmso_rank(sentence("has_edge")) == (2, 1)

    def test_symbols_and_fragments(self):
        assert symbols(sentence("has_minimum")) == {"<="}
        assert is_fo(sentence("has_triangle"))
        assert not is_fo(sentence("bipartite"))
        assert free_variables(parse("ex x. E(x,y)")) == {"y"}
        assert is_sentence(sentence("connected"))
