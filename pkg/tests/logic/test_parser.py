import pytest

from msolift.core.structures import GRAPH_VOCABULARY, Vocabulary
from msolift.errors import FormulaSyntaxError
from msolift.logic.formulas import And, Exists, Implies, Le, Mem, Mod, Not, Or, Rel, Sing, Sub
from msolift.logic.library import ORDER_INVARIANT, sentence
from msolift.logic.parser import format_formula, parse_formula

UNARY = Vocabulary((("E", 2), ("P", 1)))


class TestParse:
    def test_precedence(self):
        phi = parse_formula("~E(x,y) & E(y,x) | x = y -> x <= y", GRAPH_VOCABULARY)
        assert isinstance(phi, Implies)
        assert isinstance(phi.left, Or)
        assert isinstance(phi.left.left, And)
        assert isinstance(phi.left.left.left, Not)
        assert phi.right == Le("x", "y")

    def test_implication_is_right_associative(self):
        phi = parse_formula("x = x -> y = y -> x = y", GRAPH_VOCABULARY)
        assert isinstance(phi.right, Implies)

    def test_quantifier_body_extends_right(self):
        phi = parse_formula("ex x. E(x,x) & x = x", GRAPH_VOCABULARY)
        assert isinstance(phi, Exists)
        assert isinstance(phi.body, And)

    def test_set_only_atoms(self):
        phi = parse_formula("sing(X) & X sub Y & E(X,Y) & C_3(Y) & x in Y", GRAPH_VOCABULARY)
        atoms = []
        node = phi
        while isinstance(node, And):
            atoms.append(node.right)
            node = node.left
        atoms.append(node)
        assert Sing("X") in atoms
        assert Sub("X", "Y") in atoms
        assert Rel("E", ("X", "Y")) in atoms
        assert Mod(3, "Y") in atoms
        assert Mem("x", "Y") in atoms

    def test_counting_a_unary_symbol(self):
        assert parse_formula("C_2(P)", UNARY) == Mod(2, "P", relation=True)

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("F(x,y)", "Unknown symbol"),
            ("E(x)", "arity"),
            ("E(x,Y)", "mix"),
            ("ex X. true", "Element variable expected"),
            ("x in y", "element in SET"),
            ("C_2(E)", "unary"),
            ("X = Y", "compares element variables"),
            ("(x = x", "Expected"),
            ("x = x )", "Unexpected"),
        ],
    )
    def test_errors_name_the_problem(self, text, fragment):
        with pytest.raises(FormulaSyntaxError, match=fragment):
            parse_formula(text, GRAPH_VOCABULARY)

    def test_error_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("x = x & F(x)", GRAPH_VOCABULARY)
        assert info.value.position == 8


class TestFormat:
    @pytest.mark.parametrize("name", sorted(ORDER_INVARIANT))
    def test_library_sentences_print_and_parse_back(self, name):
        phi = sentence(name)
        assert parse_formula(format_formula(phi), GRAPH_VOCABULARY) == phi

    def test_nested_quantifier_gets_parentheses(self):
        phi = parse_formula("(ex x. x = x) & (all y. y = y)", GRAPH_VOCABULARY)
        assert format_formula(phi) == "(ex x. x = x) & (all y. y = y)"
