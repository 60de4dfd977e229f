from typing import Optional

from msolift.core.structures import ORDER_SYMBOL
from msolift.errors import ContractError
from msolift.logic.evaluate import evaluate
from msolift.logic.formulas import (
    Exists,
    Forall,
    Formula,
    Le,
    Mod,
    Not,
    Rel,
    Sing,
    Sub,
    conjunction,
    disjunction,
    free_variables,
    rank,
)
from msolift.types.engine import relation_atoms, unary_symbols
from msolift.types.registry import TypeId, TypeRegistry, default_registry


def parameter_name(i: int) -> str:
    """Name of the set variable bound to parameter i (0-based)."""
    return f"X{i + 1}"


def separating_sentence(
    theta: TypeId, other: TypeId, registry: Optional[TypeRegistry] = None
) -> Formula:
    """
    A set-only formula true on every realization of θ and false on every
    realization of `other`. Its free variables are X1..Xp for the p set
    parameters of the types and its rank is at most their rank.

    Raises ContractError when the types are equal or have different signatures.
    """
    registry = registry or default_registry()
    if theta == other:
        raise ContractError(f"Type {theta} is not separated from itself")
    m1, m2 = registry.meta(theta), registry.meta(other)
    if (m1.q, m1.c, m1.arity, m1.vocabulary) != (m2.q, m2.c, m2.arity, m2.vocabulary):
        raise ContractError(f"Types {theta} and {other} have different signatures: {m1} vs {m2}")
    return _separate(registry.payload(theta), registry.payload(other), m1.arity, registry)


def _separate(p1: tuple, p2: tuple, arity: int, registry: TypeRegistry) -> Formula:
    kind = p1[0]
    if kind == "r0":
        return _separate_diagrams(p1[1], p1[2], p2[1], p2[2])
    if kind == "r1":
        header1, exts1, choices1 = p1[1], p1[2], p1[3]
        header2, exts2, choices2 = p2[1], p2[2], p2[3]
        if (header1, exts1) != (header2, exts2):
            return _separate_diagrams(header1, exts1, header2, exts2)
        var = parameter_name(arity)
        only_first = sorted(choices1 - choices2)
        if only_first:
            row = only_first[0]
            return Exists(
                var,
                conjunction(
                    _separate_diagrams(header1, exts1 + (row,), header2, exts2 + (other,))
                    for other in sorted(choices2)
                ),
            )
        row = sorted(choices2 - choices1)[0]
        return Forall(
            var,
            disjunction(
                _separate_diagrams(header1, exts1 + (mine,), header2, exts2 + (row,))
                for mine in sorted(choices1)
            ),
        )

    children1, children2 = p1[2], p2[2]
    var = parameter_name(arity)
    only_first = sorted(children1 - children2)
    if only_first:
        child = only_first[0]
        return Exists(
            var,
            conjunction(
                _separate(registry.payload(child), registry.payload(o), arity + 1, registry)
                for o in sorted(children2)
            ),
        )
    child = sorted(children2 - children1)[0]
    return Forall(
        var,
        disjunction(
            _separate(registry.payload(mine), registry.payload(child), arity + 1, registry)
            for mine in sorted(children1)
        ),
    )


def _literal(atom: Formula, holds: bool) -> Formula:
    return atom if holds else Not(atom)


def _separate_diagrams(header1, exts1, header2, exts2) -> Formula:
    """An atom (or its negation) true in the first diagram and false in the second."""
    vocabulary, c, unary1 = header1
    unary2 = header2[2]
    if unary1 != unary2:
        bit = 0
        for name in unary_symbols(vocabulary):
            for m in range(2, c + 1):
                if (unary1 ^ unary2) >> bit & 1:
                    return _literal(Mod(m, name, relation=True), bool(unary1 >> bit & 1))
                bit += 1
    for j, (row1, row2) in enumerate(zip(exts1, exts2)):
        if row1 == row2:
            continue
        bits1, single1, rel1, mods1 = row1
        bits2, single2, rel2, mods2 = row2
        mine = parameter_name(j)
        diff = bits1 ^ bits2
        if diff:
            b = (diff & -diff).bit_length() - 1
            i = b // 2
            atom = Sub(mine, parameter_name(i)) if b % 2 == 0 else Sub(parameter_name(i), mine)
            return _literal(atom, bool(bits1 >> b & 1))
        if single1 != single2:
            return _literal(Sing(mine), single1)
        diff = rel1 ^ rel2
        if diff:
            k = (diff & -diff).bit_length() - 1
            name, indices = relation_atoms(vocabulary, j)[k]
            names = tuple(parameter_name(i) for i in indices)
            atom = Le(*names) if name == ORDER_SYMBOL else Rel(name, names)
            return _literal(atom, bool(rel1 >> k & 1))
        diff = mods1 ^ mods2
        b = (diff & -diff).bit_length() - 1
        return _literal(Mod(b + 2, mine), bool(mods1 >> b & 1))
    raise ContractError("Diagrams do not differ")


def confirm_separation(
    phi: Formula, theta: TypeId, other: TypeId, registry: Optional[TypeRegistry] = None
) -> bool:
    """Evaluate φ on the stored realizations of both types (True when it separates them)."""
    registry = registry or default_registry()
    r1, r2 = registry.realization(theta), registry.realization(other)
    names = sorted(free_variables(phi))
    if rank(phi) > registry.meta(theta).q:
        return False

    def assignment(realization):
        return {parameter_name(i): realization.sets[i] for i in range(len(realization.sets))
                if parameter_name(i) in names}

    return evaluate(r1.structure, assignment(r1), phi) and not evaluate(
        r2.structure, assignment(r2), phi
    )
