"""Independent checks computed with networkx, used to cross-check evaluation and lifting."""

from itertools import chain, combinations
from typing import Optional, Sequence

import networkx as nx

from msolift.core.structures import Graph, Structure
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
)


def bipartite(G: Graph) -> bool:
    return nx.is_bipartite(G.to_networkx())


def connected(G: Graph) -> bool:
    return nx.is_connected(G.to_networkx())


def has_isolated(G: Graph) -> bool:
    return any(True for _ in nx.isolates(G.to_networkx()))


def has_triangle(G: Graph) -> bool:
    return any(nx.triangles(G.to_networkx()).values())


def has_edge(G: Graph) -> bool:
    return G.to_networkx().number_of_edges() > 0


def naive_evaluate(A: Structure, phi: Formula, order: Optional[Sequence[int]] = None, env: Optional[dict] = None) -> bool:
    """
    Textbook Tarski semantics: sets are frozensets, set quantifiers range over
    every subset, no memo. Set-valued arguments of R and <= must be singletons.
    """
    env = env or {}
    elements = sorted(A.universe)

    def element(name):
        value = env[name]
        if isinstance(value, frozenset):
            return next(iter(value)) if len(value) == 1 else None
        return value

    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Rel):
        args = tuple(element(a) for a in phi.args)
        return None not in args and A.holds(phi.symbol, args)
    if isinstance(phi, Eq):
        return env[phi.left] == env[phi.right]
    if isinstance(phi, Le):
        a, b = element(phi.left), element(phi.right)
        return a is not None and b is not None and list(order).index(a) <= list(order).index(b)
    if isinstance(phi, Mem):
        return env[phi.element] in env[phi.set_var]
    if isinstance(phi, Mod):
        size = len(A.tuples(phi.target)) if phi.relation else len(env[phi.target])
        return size % phi.modulus == 0
    if isinstance(phi, Sub):
        return env[phi.left] <= env[phi.right]
    if isinstance(phi, Sing):
        return len(env[phi.set_var]) == 1
    if isinstance(phi, Not):
        return not naive_evaluate(A, phi.body, order, env)
    if isinstance(phi, And):
        return naive_evaluate(A, phi.left, order, env) and naive_evaluate(A, phi.right, order, env)
    if isinstance(phi, Or):
        return naive_evaluate(A, phi.left, order, env) or naive_evaluate(A, phi.right, order, env)
    if isinstance(phi, Implies):
        return not naive_evaluate(A, phi.left, order, env) or naive_evaluate(A, phi.right, order, env)
    if isinstance(phi, (Exists, Forall)):
        if phi.var[:1].isupper():
            values = [frozenset(s) for s in chain.from_iterable(combinations(elements, n) for n in range(len(elements) + 1))]
        else:
            values = elements
        outcomes = (naive_evaluate(A, phi.body, order, {**env, phi.var: v}) for v in values)
        return any(outcomes) if isinstance(phi, Exists) else all(outcomes)
    raise TypeError(f"Unknown formula node {phi!r}")
