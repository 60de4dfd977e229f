from typing import Optional

from msolift.core.structures import ORDER_SYMBOL
from msolift.errors import ContractError
from msolift.logic.evaluate import evaluate
from msolift.logic.formulas import (
    And,
    Const,
    Exists,
    Forall,
    Formula,
    Implies,
    Le,
    Mod,
    Not,
    Or,
    Rel,
    Sing,
    Sub,
    free_variables,
    moduli,
    rank,
    symbols,
)
from msolift.logic.transform import to_set_only
from msolift.types.engine import relation_atoms, unary_symbols
from msolift.types.registry import TypeId, TypeRegistry, default_registry


def _check_signature(theta: TypeId, phi: Formula, registry: TypeRegistry) -> None:
    meta = registry.meta(theta)
    if meta.arity:
        raise ContractError(f"Type {theta} has {meta.arity} set parameters; satisfies needs a sentence type")
    if free_variables(phi):
        raise ContractError(f"Not a sentence, free variables: {sorted(free_variables(phi))}")
    if rank(phi) > meta.q:
        raise ContractError(f"Formula rank {rank(phi)} exceeds type rank {meta.q}")
    too_large = [m for m in moduli(phi) if m > meta.c]
    if too_large:
        raise ContractError(f"Moduli {too_large} exceed the counting bound {meta.c}")
    known = {name for name, _ in meta.vocabulary}
    unknown = symbols(phi) - known
    if unknown:
        detail = " (type is unordered)" if ORDER_SYMBOL in unknown else ""
        raise ContractError(f"Symbols {sorted(unknown)} are not in the type's vocabulary{detail}")


def satisfies(theta: TypeId, phi: Formula, registry: Optional[TypeRegistry] = None) -> bool:
    """
    Truth of the sentence φ under θ: on the stored representative when there
    is one, otherwise read off the payload.

    Type-correctness makes the answer the same on every realization, provided
    rank(φ) <= q, every modulus of φ is <= c and φ only uses symbols of θ.

    Raises ContractError on rank or signature mismatch and for unregistered θ.
    """
    registry = registry or default_registry()
    _check_signature(theta, phi, registry)
    if registry.has_realization(theta):
        return evaluate(registry.realization(theta).structure, {}, phi)
    return holds(theta, phi, registry)


def holds(theta: TypeId, phi: Formula, registry: Optional[TypeRegistry] = None) -> bool:
    """Truth of the sentence φ computed from θ's payload alone."""
    registry = registry or default_registry()
    _check_signature(theta, phi, registry)
    return _PayloadEvaluator(registry).ev(theta, (), to_set_only(phi))


class _PayloadEvaluator:
    """
    Structural recursion over a set-only formula. Bound set variables are the
    type's parameters in binding order; quantifiers walk the payload's
    extensions.
    """

    def __init__(self, registry: TypeRegistry):
        self.registry = registry
        self.memo: dict = {}
        self.diagrams: dict[TypeId, tuple] = {}

    def diagram(self, theta: TypeId) -> tuple:
        """(header, extension rows of the parameters) of θ."""
        found = self.diagrams.get(theta)
        if found is not None:
            return found
        arity = self.registry.meta(theta).arity
        payload = self.registry.payload(theta)
        if payload[0] == "q":
            header, rows = self.diagram(min(payload[2]))
            found = (header, rows[:arity])
        else:
            found = (payload[1], payload[2])
        self.diagrams[theta] = found
        return found

    def ev(self, theta: TypeId, names: tuple[str, ...], phi: Formula) -> bool:
        if isinstance(phi, Not):
            return not self.ev(theta, names, phi.body)
        if isinstance(phi, And):
            return self.ev(theta, names, phi.left) and self.ev(theta, names, phi.right)
        if isinstance(phi, Or):
            return self.ev(theta, names, phi.left) or self.ev(theta, names, phi.right)
        if isinstance(phi, Implies):
            return not self.ev(theta, names, phi.left) or self.ev(theta, names, phi.right)
        if isinstance(phi, (Exists, Forall)):
            key = (theta, names, id(phi))
            cached = self.memo.get(key)
            if cached is None:
                cached = self.memo[key] = self.quantify(theta, names, phi)
            return cached
        header, rows = self.diagram(theta)
        return self.atom(header, rows, names, phi)

    def quantify(self, theta: TypeId, names: tuple[str, ...], phi) -> bool:
        want = isinstance(phi, Exists)
        inner = names + (phi.var,)
        payload = self.registry.payload(theta)
        if payload[0] == "r0":
            raise ContractError(f"Quantifier on {phi.var} exceeds the rank of type {theta}")
        if payload[0] == "q":
            for child in payload[2]:
                if self.ev(child, inner, phi.body) == want:
                    return want
            return not want
        header, rows = payload[1], payload[2]
        for row in payload[3]:
            extended = rows + (row,)
            if self._body(header, extended, inner, phi.body) == want:
                return want
        return not want

    def _body(self, header: tuple, rows: tuple, names: tuple[str, ...], phi: Formula) -> bool:
        if isinstance(phi, Not):
            return not self._body(header, rows, names, phi.body)
        if isinstance(phi, And):
            return self._body(header, rows, names, phi.left) and self._body(header, rows, names, phi.right)
        if isinstance(phi, Or):
            return self._body(header, rows, names, phi.left) or self._body(header, rows, names, phi.right)
        if isinstance(phi, Implies):
            return not self._body(header, rows, names, phi.left) or self._body(header, rows, names, phi.right)
        if isinstance(phi, (Exists, Forall)):
            raise ContractError(f"Quantifier on {phi.var} exceeds the rank of the type")
        return self.atom(header, rows, names, phi)

    def atom(self, header: tuple, rows: tuple, names: tuple[str, ...], phi: Formula) -> bool:
        vocabulary, c, unary_bits = header

        def index(name: str) -> int:
            # innermost binding wins
            for i in range(len(names) - 1, -1, -1):
                if names[i] == name:
                    return i
            raise ContractError(f"Unbound variable {name}")

        if isinstance(phi, Const):
            return phi.value
        if isinstance(phi, Sing):
            return rows[index(phi.set_var)][1]
        if isinstance(phi, Sub):
            i, j = index(phi.left), index(phi.right)
            if i == j:
                return True
            if i > j:
                return bool(rows[i][0] >> (2 * j) & 1)
            return bool(rows[j][0] >> (2 * i + 1) & 1)
        if isinstance(phi, Le):
            return self.relation(vocabulary, rows, ORDER_SYMBOL, (index(phi.left), index(phi.right)))
        if isinstance(phi, Rel):
            return self.relation(vocabulary, rows, phi.symbol, tuple(index(a) for a in phi.args))
        if isinstance(phi, Mod):
            if phi.modulus == 1:
                return True
            if phi.relation:
                bit = unary_symbols(vocabulary).index(phi.target) * (c - 1) + phi.modulus - 2
                return bool(unary_bits >> bit & 1)
            return bool(rows[index(phi.target)][3] >> (phi.modulus - 2) & 1)
        raise ContractError(f"Not a set-only atom: {phi!r}")

    @staticmethod
    def relation(vocabulary: tuple, rows: tuple, name: str, indices: tuple[int, ...]) -> bool:
        if not all(rows[i][1] for i in indices):
            return False
        level = max(indices)
        atoms = relation_atoms(vocabulary, level)
        try:
            k = atoms.index((name, indices))
        except ValueError:
            return False
        return bool(rows[level][2] >> k & 1)
