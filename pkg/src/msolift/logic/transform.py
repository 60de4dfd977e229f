from itertools import count
from typing import Mapping

from msolift.logic.formulas import (
    ATOMS,
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
    all_variables,
    is_set_variable,
    uses_set_atoms,
)


def _fresh_names(taken: set[str], prefix: str):
    for i in count(1):
        name = f"{prefix}{i}"
        if name not in taken:
            taken.add(name)
            yield name


def to_set_only(phi: Formula) -> Formula:
    """
    Replace every element variable by a singleton set variable.

    ∃x ψ becomes ∃X (sing(X) & ψ'), ∀x ψ becomes ∀X (sing(X) -> ψ'); the
    guard is an atom, so the quantifier rank is unchanged. Free element
    variables x are renamed consistently and reported by element_renaming.
    """
    return _to_set_only(phi, element_renaming(phi))


def element_renaming(phi: Formula) -> dict[str, str]:
    taken = set(all_variables(phi))
    fresh = _fresh_names(taken, "Z")
    return {v: next(fresh) for v in sorted(all_variables(phi)) if not is_set_variable(v)}


def _to_set_only(phi: Formula, names: Mapping[str, str]) -> Formula:
    def s(v: str) -> str:
        return names.get(v, v)

    if isinstance(phi, Const):
        return phi
    if isinstance(phi, Rel):
        return Rel(phi.symbol, tuple(s(a) for a in phi.args))
    if isinstance(phi, Eq):
        return And(Sub(s(phi.left), s(phi.right)), Sub(s(phi.right), s(phi.left)))
    if isinstance(phi, Le):
        return Le(s(phi.left), s(phi.right))
    if isinstance(phi, Mem):
        return Sub(s(phi.element), phi.set_var)
    if isinstance(phi, (Mod, Sub, Sing)):
        return phi
    if isinstance(phi, Not):
        return Not(_to_set_only(phi.body, names))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(_to_set_only(phi.left, names), _to_set_only(phi.right, names))
    body = _to_set_only(phi.body, names)
    if is_set_variable(phi.var):
        return type(phi)(phi.var, body)
    var = names[phi.var]
    if isinstance(phi, Exists):
        return Exists(var, And(Sing(var), body))
    return Forall(var, Implies(Sing(var), body))


def relativize(phi: Formula, guard: str) -> Formula:
    """
    Restrict every quantifier to the unary relation `guard`.

    Element quantifiers get an atomic guard. Set quantifiers are guarded
    (at one extra level of rank) only when φ has atoms that look at whole
    sets; membership atoms under guarded element quantifiers never see
    unguarded members.
    """
    guard_sets = uses_set_atoms(phi)
    fresh = _fresh_names(set(all_variables(phi)), "g")
    return _relativize(phi, guard, guard_sets, fresh)


def _relativize(phi: Formula, guard: str, guard_sets: bool, fresh) -> Formula:
    if isinstance(phi, ATOMS):
        return phi
    if isinstance(phi, Not):
        return Not(_relativize(phi.body, guard, guard_sets, fresh))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(
            _relativize(phi.left, guard, guard_sets, fresh),
            _relativize(phi.right, guard, guard_sets, fresh),
        )
    body = _relativize(phi.body, guard, guard_sets, fresh)
    if is_set_variable(phi.var):
        if not guard_sets:
            return type(phi)(phi.var, body)
        y = next(fresh)
        inside = Forall(y, Implies(Mem(y, phi.var), Rel(guard, (y,))))
    else:
        inside = Rel(guard, (phi.var,))
    if isinstance(phi, Exists):
        return Exists(phi.var, And(inside, body))
    return Forall(phi.var, Implies(inside, body))
