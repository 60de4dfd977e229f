import logging

from msolift.core.decomposition import NodeKind, SegmentedDecomposition, validate_decomposition
from msolift.core.structures import Structure, Vocabulary, induced, is_reserved
from msolift.errors import DomainError
from msolift.otxx.build import Otxx, otxx_symbols

logger = logging.getLogger(__name__)


def _linear(pairs: set[tuple[int, int]], items: frozenset[int], what: str) -> tuple[int, ...]:
    """Read a reflexive linear order on items from its pairs."""
    ranked = sorted(items, key=lambda v: sum(1 for w in items if (w, v) in pairs))
    expected = {(ranked[i], ranked[j]) for i in range(len(ranked)) for j in range(i, len(ranked))}
    inside = {(v, w) for v, w in pairs if v in items and w in items}
    if inside != expected:
        raise DomainError(f"{what} is not a linear order")
    return tuple(ranked)


def decode_otxx(X: Structure, k: int, sub: bool = False) -> Otxx:
    """
    Rebuild the Otxx whose merged structure X claims to be.

    Raises DomainError when the parts cannot be read back.
    """
    for name, arity in otxx_symbols(k).items():
        if X.vocabulary.arities.get(name) != arity:
            raise DomainError(f"Symbol {name}/{arity} is missing")
    extra = [n for n in X.vocabulary.names if n.startswith("S_") and n not in otxx_symbols(k)]
    if extra:
        raise DomainError(f"Separator index symbols {extra} exceed k={k}")
    elements = frozenset(v for (v,) in X.relations["V_S"])
    nodes = frozenset(t for (t,) in X.relations["V_T"])
    if elements & nodes or elements | nodes != X.universe:
        raise DomainError("V_S and V_T do not partition the universe")

    parents = {}
    for t, u in X.relations["E_T"]:
        if t not in nodes or u not in nodes:
            raise DomainError(f"E_T({t},{u}) leaves the tree nodes")
        if u in parents:
            raise DomainError(f"Node {u} has two parents")
        parents[u] = t
    roots = sorted(nodes - set(parents))
    if len(roots) != 1:
        raise DomainError(f"Tree has {len(roots)} roots")
    bags = {t: set() for t in nodes}
    for t, v in X.relations["R_beta"]:
        if t not in nodes or v not in elements:
            raise DomainError(f"R_beta({t},{v}) is ill-sorted")
        bags[t].add(v)
    children = {t: [] for t in nodes}
    for u, t in parents.items():
        children[t].append(u)
    kinds = {}
    for (t,) in X.relations["V_a"]:
        kinds[t] = NodeKind.A_NODE
    for (t,) in X.relations["V_b"]:
        if t in kinds:
            raise DomainError(f"Node {t} is both an a-node and a b-node")
        kinds[t] = NodeKind.B_NODE
    tree = SegmentedDecomposition(roots[0], bags, children, kinds)

    prec_triples: dict[int, set[tuple[int, int]]] = {t: set() for t in nodes}
    for t, v, w in X.relations["R_prec"]:
        if t not in nodes:
            raise DomainError(f"R_prec({t},{v},{w}) is ill-sorted")
        prec_triples[t].add((v, w))
    bag_orders = {t: _linear(prec_triples[t], frozenset(bags[t]), f"Bag order of {t}") for t in nodes}

    root = roots[0]
    root_sigma = frozenset(v for t, v in X.relations["R_sigma"] if t == root)
    if root_sigma and not sub:
        raise DomainError("A full otxx has an empty root separator")
    root_separator = _linear(set(X.relations["prec"]), root_sigma, "⪯ on the root separator")

    base_names = [n for n in X.vocabulary.names if not is_reserved(n)]
    vocabulary = Vocabulary(tuple(s for s in X.vocabulary.symbols if s[0] in base_names))
    base = induced(Structure(vocabulary, X.universe, {n: X.relations[n] for n in base_names}), elements)
    return Otxx(base=base, tree=tree, bag_orders=bag_orders, k=k, root_separator=root_separator)


def otxx_violations(X: Structure, k: int, sub: bool = False) -> list[str]:
    """Reasons why X is not an otxx (sub-otxx when sub) of adhesion at most k; empty when it is one."""
    try:
        decoded = decode_otxx(X, k, sub)
    except DomainError as e:
        return [str(e)]
    problems = []
    report = validate_decomposition(decoded.base, decoded.tree)
    for v in report.violations:
        problems.append(f"decomposition {v.condition} violated at {v.witness}: {v.detail}")
    rebuilt = decoded.structure
    if rebuilt.universe != X.universe:
        problems.append("universe differs from the rebuilt otxx")
    for name in X.vocabulary.names:
        if rebuilt.relations.get(name) != X.relations[name]:
            problems.append(f"relation {name} differs from the rebuilt otxx")
    if problems:
        logger.debug("✗ otxx validation: %s", problems[0])
    return problems


def validate_otxx(X: Structure, k: int, sub: bool = False) -> bool:
    return not otxx_violations(X, k, sub)
