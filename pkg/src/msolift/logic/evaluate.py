from typing import Mapping, Optional, Sequence, Union

from msolift.core.structures import ORDER_SYMBOL, Structure
from msolift.errors import DomainError, EvaluationError
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
    free_variables,
    is_set_variable,
    mentions_order,
)

Value = Union[int, frozenset[int]]
Assignment = Mapping[str, Value]


def order_from_relation(A: Structure) -> Optional[tuple[int, ...]]:
    """Recover the linear order stored as a binary <= relation, if the structure has one."""
    if ORDER_SYMBOL not in A.vocabulary:
        return None
    pairs = A.relations[ORDER_SYMBOL]
    below = {v: sum(1 for (x, y) in pairs if y == v) for v in A.universe}
    return tuple(sorted(A.universe, key=lambda v: below[v]))


def check_order(A: Structure, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if len(order) != len(A.universe) or set(order) != A.universe:
        raise DomainError("Order is not a linear order of the universe")
    return order


class _Evaluator:
    """
    Structural recursion over the formula. Sets are bitmasks over the sorted
    universe; the memo is keyed by (node, values of the node's free variables).
    """

    def __init__(self, A: Structure, order: Optional[Sequence[int]]):
        self.A = A
        self.elements = A.elements
        self.index = {v: i for i, v in enumerate(self.elements)}
        if order is None:
            order = order_from_relation(A)
        self.position = {v: i for i, v in enumerate(order)} if order is not None else None
        self.memo: dict = {}
        self.free: dict[int, tuple[str, ...]] = {}

    def key(self, phi: Formula, env: dict) -> tuple:
        names = self.free.get(id(phi))
        if names is None:
            names = tuple(sorted(free_variables(phi)))
            self.free[id(phi)] = names
        return (id(phi),) + tuple(env[n] for n in names)

    def singleton(self, mask: int) -> Optional[int]:
        if mask and not mask & (mask - 1):
            return self.elements[mask.bit_length() - 1]
        return None

    def element_of(self, name: str, env: dict) -> Optional[int]:
        value = env[name]
        return self.singleton(value) if is_set_variable(name) else value

    def ordered(self, a: int, b: int) -> bool:
        if self.position is None:
            raise EvaluationError("Formula uses <= but no order was given")
        return self.position[a] <= self.position[b]

    def ev(self, phi: Formula, env: dict) -> bool:
        if isinstance(phi, Const):
            return phi.value
        if isinstance(phi, Rel):
            args = [self.element_of(a, env) for a in phi.args]
            if any(a is None for a in args):
                return False
            return tuple(args) in self.A.relations[phi.symbol]
        if isinstance(phi, Eq):
            return env[phi.left] == env[phi.right]
        if isinstance(phi, Le):
            a, b = self.element_of(phi.left, env), self.element_of(phi.right, env)
            if a is None or b is None:
                return False
            return self.ordered(a, b)
        if isinstance(phi, Mem):
            return bool(env[phi.set_var] >> self.index[env[phi.element]] & 1)
        if isinstance(phi, Mod):
            if phi.relation:
                return len(self.A.relations[phi.target]) % phi.modulus == 0
            return env[phi.target].bit_count() % phi.modulus == 0
        if isinstance(phi, Sub):
            return env[phi.left] & ~env[phi.right] == 0
        if isinstance(phi, Sing):
            return self.singleton(env[phi.set_var]) is not None
        if isinstance(phi, Not):
            return not self.ev(phi.body, env)

        key = self.key(phi, env)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if isinstance(phi, And):
            result = self.ev(phi.left, env) and self.ev(phi.right, env)
        elif isinstance(phi, Or):
            result = self.ev(phi.left, env) or self.ev(phi.right, env)
        elif isinstance(phi, Implies):
            result = not self.ev(phi.left, env) or self.ev(phi.right, env)
        else:
            result = self.quantify(phi, env)
        self.memo[key] = result
        return result

    def quantify(self, phi: Union[Exists, Forall], env: dict) -> bool:
        if is_set_variable(phi.var):
            values = range(1 << len(self.elements))
        else:
            values = self.elements
        want = isinstance(phi, Exists)
        inner = dict(env)
        for value in values:
            inner[phi.var] = value
            if self.ev(phi.body, inner) == want:
                return want
        return not want


def evaluate(
    A: Structure,
    asg: Assignment,
    phi: Formula,
    order: Optional[Sequence[int]] = None,
) -> bool:
    """
    Truth of φ in A under the assignment, by full enumeration of witnesses.

    order is a sequence listing the universe; it is needed iff φ mentions <=
    and A does not carry a <= relation of its own.

    Raises EvaluationError for unbound free variables or <= without an order.
    """
    missing = free_variables(phi) - set(asg)
    if missing:
        raise EvaluationError(f"Unbound free variables: {sorted(missing)}")
    if order is not None:
        order = check_order(A, order)
    elif mentions_order(phi) and ORDER_SYMBOL not in A.vocabulary:
        raise EvaluationError("Formula uses <= but no order was given")

    evaluator = _Evaluator(A, order)
    env = {}
    for name, value in asg.items():
        if is_set_variable(name):
            members = frozenset(value)
            if not members <= A.universe:
                raise DomainError(f"Set {name} leaves the universe")
            env[name] = sum(1 << evaluator.index[v] for v in members)
        else:
            if value not in A.universe:
                raise DomainError(f"Element {name}={value} is not in the universe")
            env[name] = value
    return evaluator.ev(phi, env)
