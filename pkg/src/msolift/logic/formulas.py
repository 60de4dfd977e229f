"""
Formula AST for MSO / CMSO / FO over a vocabulary plus the order symbol <=.

Variables are plain names: lowercase names range over elements, uppercase
names over sets of elements. Besides the user grammar, the set-only atoms
(X sub Y, sing(X), R(X1,..,Xr), X <= Y) are first-class nodes so that the
types module can emit separating sentences in the same AST.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from msolift.core.structures import ORDER_SYMBOL


def is_set_variable(name: str) -> bool:
    return name[:1].isupper()


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Rel:
    """R(t1,..,tr); all arguments are element variables or all are set variables."""

    symbol: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Le:
    """left <= right under the linear order (elements, or singleton sets)."""

    left: str
    right: str


@dataclass(frozen=True)
class Mem:
    element: str
    set_var: str


@dataclass(frozen=True)
class Mod:
    """C_m(X): m divides |X|. relation=True counts a unary relation symbol instead."""

    modulus: int
    target: str
    relation: bool = False


@dataclass(frozen=True)
class Sub:
    left: str
    right: str


@dataclass(frozen=True)
class Sing:
    set_var: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Atom = Union[Const, Rel, Eq, Le, Mem, Mod, Sub, Sing]
Formula = Union[Atom, Not, And, Or, Implies, Exists, Forall]

ATOMS = (Const, Rel, Eq, Le, Mem, Mod, Sub, Sing)
BINARY = (And, Or, Implies)
QUANTIFIERS = (Exists, Forall)


def _balanced(parts: list, node) -> Formula:
    # balanced so that hashing and printing stay shallow for long chains
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    return node(_balanced(parts[:mid], node), _balanced(parts[mid:], node))


def conjunction(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    return _balanced(parts, And) if parts else Const(True)


def disjunction(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    return _balanced(parts, Or) if parts else Const(False)


def atom_variables(phi: Atom) -> frozenset[str]:
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, Rel):
        return frozenset(phi.args)
    if isinstance(phi, (Eq, Le, Sub)):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Mem):
        return frozenset((phi.element, phi.set_var))
    if isinstance(phi, Mod):
        return frozenset() if phi.relation else frozenset((phi.target,))
    if isinstance(phi, Sing):
        return frozenset((phi.set_var,))
    raise TypeError(f"Not an atom: {phi!r}")


@lru_cache(maxsize=65536)
def free_variables(phi: Formula) -> frozenset[str]:
    if isinstance(phi, ATOMS):
        return atom_variables(phi)
    if isinstance(phi, Not):
        return free_variables(phi.body)
    if isinstance(phi, BINARY):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, QUANTIFIERS):
        return free_variables(phi.body) - {phi.var}
    raise TypeError(f"Not a formula: {phi!r}")


@lru_cache(maxsize=65536)
def rank(phi: Formula) -> int:
    """Maximum number of nested quantifiers."""
    if isinstance(phi, ATOMS):
        return 0
    if isinstance(phi, Not):
        return rank(phi.body)
    if isinstance(phi, BINARY):
        return max(rank(phi.left), rank(phi.right))
    return 1 + rank(phi.body)


def subformulas(phi: Formula):
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.body)
        elif isinstance(node, BINARY):
            stack.extend((node.right, node.left))
        elif isinstance(node, QUANTIFIERS):
            stack.append(node.body)


def moduli(phi: Formula) -> frozenset[int]:
    return frozenset(n.modulus for n in subformulas(phi) if isinstance(n, Mod))


def cmso_rank(phi: Formula) -> tuple[int, int]:
    """(quantifier rank, largest modulus); the modulus is 1 for formulas without counting atoms."""
    return rank(phi), max(moduli(phi), default=1)


def symbols(phi: Formula) -> frozenset[str]:
    """Relation symbols used, including <= and unary symbols under C_m."""
    found = set()
    for node in subformulas(phi):
        if isinstance(node, Rel):
            found.add(node.symbol)
        elif isinstance(node, Le):
            found.add(ORDER_SYMBOL)
        elif isinstance(node, Mod) and node.relation:
            found.add(node.target)
    return frozenset(found)


def mentions_order(phi: Formula) -> bool:
    return ORDER_SYMBOL in symbols(phi)


def all_variables(phi: Formula) -> frozenset[str]:
    names = set()
    for node in subformulas(phi):
        if isinstance(node, ATOMS):
            names |= atom_variables(node)
        elif isinstance(node, QUANTIFIERS):
            names.add(node.var)
    return frozenset(names)


def is_fo(phi: Formula) -> bool:
    return not any(is_set_variable(v) for v in all_variables(phi)) and not any(
        isinstance(n, (Sub, Sing)) or (isinstance(n, Mod) and not n.relation)
        for n in subformulas(phi)
    )


def is_sentence(phi: Formula) -> bool:
    return not free_variables(phi)


def uses_set_atoms(phi: Formula) -> bool:
    """True when some atom looks at a set as a whole (counting, inclusion, singleton, set-level relations)."""
    for node in subformulas(phi):
        if isinstance(node, (Sub, Sing)) or (isinstance(node, Mod) and not node.relation):
            return True
        if isinstance(node, Rel) and node.args and is_set_variable(node.args[0]):
            return True
        if isinstance(node, Le) and is_set_variable(node.left):
            return True
    return False
