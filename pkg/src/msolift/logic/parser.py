"""
Text syntax for formulas.

    φ ::= ID "(" term {"," term} ")" | term "=" term | term "<=" term
        | term "in" SETVAR | "C_" NAT "(" SETVAR | ID ")"
        | SETVAR "sub" SETVAR | "sing" "(" SETVAR ")" | "true" | "false"
        | "~" φ | φ ("&" | "|" | "->") φ
        | ("ex" | "all") VAR "." φ | ("EX" | "ALL") SETVAR "." φ | "(" φ ")"

VAR starts lowercase, SETVAR uppercase. Precedence ~ > & > | > ->; & and |
associate to the left, -> to the right; a quantifier body extends as far
right as possible. The sub/sing/true/false forms and relation atoms over
set variables are the set-only extension used for separating sentences.
"""

import re
from dataclasses import dataclass

from msolift.core.structures import ORDER_SYMBOL, Vocabulary
from msolift.errors import FormulaSyntaxError
from msolift.logic.formulas import (
    And,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Le,
    Mem,
    Mod,
    Not,
    Or,
    Rel,
    Sing,
    Sub,
    is_set_variable,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<le><=)|(?P<punct>[()~&|,.=])|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+))"
)
_MODULO = re.compile(r"C_(\d+)")
_KEYWORDS = {"ex", "all", "EX", "ALL", "in", "sub", "sing", "true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"Unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocabulary: Vocabulary):
        self.tokens = tokenize(text)
        self.i = 0
        self.vocabulary = vocabulary

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.text == text and self.current.kind != "end":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind == "end":
            self.fail(f"Expected {text!r}, found {self.current.text or 'end of input'!r}")
        return self.advance()

    def fail(self, message: str, token: Token | None = None):
        raise FormulaSyntaxError(message, (token or self.current).position)

    def parse(self) -> Formula:
        phi = self.implication()
        if self.current.kind != "end":
            self.fail(f"Unexpected {self.current.text!r}")
        return phi

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("|"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.accept("~"):
            return Not(self.unary())
        token = self.current
        if token.kind == "name" and token.text in ("ex", "all", "EX", "ALL"):
            self.advance()
            var = self.variable(set_var=token.text.isupper())
            self.expect(".")
            body = self.implication()
            return Exists(var, body) if token.text.lower() == "ex" else Forall(var, body)
        return self.atom()

    def variable(self, set_var: bool) -> str:
        token = self.current
        if token.kind != "name" or token.text in _KEYWORDS:
            self.fail("Expected a variable")
        if is_set_variable(token.text) != set_var:
            self.fail(f"{'Set' if set_var else 'Element'} variable expected, found {token.text!r}")
        self.advance()
        return token.text

    def name(self) -> Token:
        token = self.current
        if token.kind != "name" or token.text in _KEYWORDS:
            self.fail("Expected a variable")
        return self.advance()

    def atom(self) -> Formula:
        token = self.current
        if self.accept("("):
            phi = self.implication()
            self.expect(")")
            return phi
        if token.kind != "name":
            self.fail(f"Unexpected {token.text or 'end of input'!r}")
        if token.text in ("true", "false"):
            self.advance()
            return Const(token.text == "true")
        if token.text == "sing":
            self.advance()
            self.expect("(")
            var = self.variable(set_var=True)
            self.expect(")")
            return Sing(var)
        if self.tokens[self.i + 1].text == "(":
            m = _MODULO.fullmatch(token.text)
            if m:
                return self.modulo(token, int(m.group(1)))
            return self.relation(token)
        return self.comparison()

    def modulo(self, token: Token, modulus: int) -> Formula:
        if modulus < 1:
            self.fail("Modulus must be positive", token)
        self.advance()
        self.expect("(")
        target = self.name()
        self.expect(")")
        if target.text in self.vocabulary:
            if self.vocabulary.arity(target.text) != 1:
                self.fail(f"C_m counts only unary symbols, {target.text} has arity "
                          f"{self.vocabulary.arity(target.text)}", target)
            return Mod(modulus, target.text, relation=True)
        if not is_set_variable(target.text):
            self.fail("C_m expects a set variable or unary symbol", target)
        return Mod(modulus, target.text)

    def relation(self, token: Token) -> Formula:
        symbol = token.text
        if symbol not in self.vocabulary:
            self.fail(f"Unknown symbol {symbol!r}", token)
        self.advance()
        self.expect("(")
        args = [self.name().text]
        while self.accept(","):
            args.append(self.name().text)
        self.expect(")")
        arity = self.vocabulary.arity(symbol)
        if len(args) != arity:
            self.fail(f"{symbol} has arity {arity}, got {len(args)} arguments", token)
        if len({is_set_variable(a) for a in args}) > 1:
            self.fail(f"Arguments of {symbol} mix element and set variables", token)
        return Rel(symbol, tuple(args))

    def comparison(self) -> Formula:
        left = self.name()
        op = self.current
        if op.kind == "le":
            self.advance()
            right = self.name()
            if is_set_variable(left.text) != is_set_variable(right.text):
                self.fail("Both sides of <= must be of the same sort", op)
            return Le(left.text, right.text)
        if op.text == "=":
            self.advance()
            right = self.name()
            if is_set_variable(left.text) or is_set_variable(right.text):
                self.fail("= compares element variables", op)
            return Eq(left.text, right.text)
        if op.text == "in":
            self.advance()
            right = self.name()
            if is_set_variable(left.text) or not is_set_variable(right.text):
                self.fail("Expected 'element in SET'", op)
            return Mem(left.text, right.text)
        if op.text == "sub":
            self.advance()
            right = self.name()
            if not (is_set_variable(left.text) and is_set_variable(right.text)):
                self.fail("Expected 'SET sub SET'", op)
            return Sub(left.text, right.text)
        self.fail(f"Expected a comparison after {left.text!r}", op)


def parse_formula(text: str, vocabulary: Vocabulary) -> Formula:
    """
    Parse formula text over the given vocabulary (<= is always available).

    Raises FormulaSyntaxError with the character position on syntax errors,
    unknown symbols and arity mismatches.
    """
    return _Parser(text, vocabulary).parse()


_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def format_formula(phi: Formula) -> str:
    """Inverse of parse_formula: parse_formula(format_formula(φ)) == φ."""
    return _format(phi, 0)


def _format(phi: Formula, context: int) -> str:
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Rel):
        return f"{phi.symbol}({','.join(phi.args)})"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Le):
        return f"{phi.left} {ORDER_SYMBOL} {phi.right}"
    if isinstance(phi, Mem):
        return f"{phi.element} in {phi.set_var}"
    if isinstance(phi, Mod):
        return f"C_{phi.modulus}({phi.target})"
    if isinstance(phi, Sub):
        return f"{phi.left} sub {phi.right}"
    if isinstance(phi, Sing):
        return f"sing({phi.set_var})"
    if isinstance(phi, Not):
        return "~" + _format(phi.body, 4)
    if isinstance(phi, (Exists, Forall)):
        if is_set_variable(phi.var):
            keyword = "EX" if isinstance(phi, Exists) else "ALL"
        else:
            keyword = "ex" if isinstance(phi, Exists) else "all"
        text = f"{keyword} {phi.var}. {_format(phi.body, 0)}"
        return f"({text})" if context > 0 else text
    prec = _PREC[type(phi)]
    op = {And: "&", Or: "|", Implies: "->"}[type(phi)]
    if isinstance(phi, Implies):
        text = f"{_format(phi.left, prec + 1)} {op} {_format(phi.right, prec)}"
    else:
        text = f"{_format(phi.left, prec)} {op} {_format(phi.right, prec + 1)}"
    return f"({text})" if prec < context else text
