import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx

from msolift.errors import DomainError

ORDER_SYMBOL = "<="

# Symbols owned by ordered tree extensions; user vocabularies may not use them.
RESERVED_SYMBOLS = frozenset(
    {
        ORDER_SYMBOL,
        "V_S",
        "V_T",
        "E_T",
        "R_beta",
        "R_sigma",
        "R_gamma",
        "R_prec",
        "V_a",
        "V_b",
        "prec",
    }
)

_IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_SEPARATOR_INDEX = re.compile(r"S_\d+")


def is_reserved(name: str) -> bool:
    return name in RESERVED_SYMBOLS or bool(_SEPARATOR_INDEX.fullmatch(name))


@dataclass(frozen=True)
class Vocabulary:
    """Relation symbols with arities, kept sorted by name."""

    symbols: tuple[tuple[str, int], ...] = ()
    internal: bool = False

    def __post_init__(self):
        normalized = tuple(sorted((str(n), int(a)) for n, a in self.symbols))
        names = [n for n, _ in normalized]
        if len(set(names)) != len(names):
            raise DomainError(f"Duplicate symbol in vocabulary: {names}")
        for name, arity in normalized:
            if arity < 1:
                raise DomainError(f"Symbol {name} must have positive arity, got {arity}")
            if name != ORDER_SYMBOL and not _IDENTIFIER.fullmatch(name):
                raise DomainError(f"Invalid symbol name: {name!r}")
            if not self.internal and is_reserved(name):
                raise DomainError(f"Symbol {name} is reserved")
        object.__setattr__(self, "symbols", normalized)

    @classmethod
    def from_mapping(cls, arities: Mapping[str, int], internal: bool = False) -> "Vocabulary":
        return cls(tuple(arities.items()), internal=internal)

    @cached_property
    def arities(self) -> dict[str, int]:
        return dict(self.symbols)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self.arities[name]
        except KeyError:
            raise DomainError(f"Unknown symbol: {name}") from None

    def __contains__(self, name: object) -> bool:
        return name in self.arities

    def extend(self, extra: Mapping[str, int]) -> "Vocabulary":
        """Vocabulary with additional (possibly reserved) symbols."""
        merged = dict(self.symbols)
        for name, arity in extra.items():
            if name in merged and merged[name] != arity:
                raise DomainError(f"Symbol {name} redeclared with arity {arity}")
            merged[name] = arity
        return Vocabulary.from_mapping(merged, internal=True)

    def restrict(self, names: Iterable[str]) -> "Vocabulary":
        keep = set(names)
        return Vocabulary(
            tuple(s for s in self.symbols if s[0] in keep), internal=self.internal
        )


GRAPH_VOCABULARY = Vocabulary((("E", 2),))


@dataclass(frozen=True, eq=True)
class Structure:
    """
    Finite relational structure.

    Element ids are non-negative integers. relations holds every symbol of
    the vocabulary (missing symbols are normalized to the empty relation).
    """

    vocabulary: Vocabulary
    universe: frozenset[int]
    relations: Mapping[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        universe = frozenset(int(v) for v in self.universe)
        if any(v < 0 for v in universe):
            raise DomainError("Element ids must be non-negative")
        for name in self.relations:
            if name not in self.vocabulary:
                raise DomainError(f"Relation {name} not in vocabulary")
        relations = {}
        for name, arity in self.vocabulary.symbols:
            tuples = frozenset(tuple(int(x) for x in t) for t in self.relations.get(name, ()))
            for t in tuples:
                if len(t) != arity:
                    raise DomainError(f"Tuple {t} of {name} has length {len(t)}, expected {arity}")
                for x in t:
                    if x not in universe:
                        raise DomainError(f"Tuple {t} of {name} leaves the universe at {x}")
            relations[name] = tuples
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "relations", relations)

    @property
    def size(self) -> int:
        return len(self.universe)

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.universe))

    def tuples(self, name: str) -> frozenset[tuple[int, ...]]:
        self.vocabulary.arity(name)
        return self.relations[name]

    def holds(self, name: str, args: tuple[int, ...]) -> bool:
        return tuple(args) in self.relations[name]

    def induced(self, vertices: Iterable[int]) -> "Structure":
        return induced(self, vertices)

    def relabel(self, mapping: Mapping[int, int]) -> "Structure":
        """Rename elements through an injective mapping defined on the universe."""
        if len(set(mapping[v] for v in self.universe)) != len(self.universe):
            raise DomainError("Relabeling is not injective")
        return self._rebuild(
            frozenset(mapping[v] for v in self.universe),
            {
                name: frozenset(tuple(mapping[x] for x in t) for t in tuples)
                for name, tuples in self.relations.items()
            },
        )

    def expand(self, extra: Mapping[str, tuple[int, Iterable[tuple[int, ...]]]]) -> "Structure":
        """Add relations given as name -> (arity, tuples); the result has an internal vocabulary."""
        vocabulary = self.vocabulary.extend({name: arity for name, (arity, _) in extra.items()})
        relations = dict(self.relations)
        for name, (_, tuples) in extra.items():
            relations[name] = frozenset(tuples)
        return Structure(vocabulary, self.universe, relations)

    def reduct(self, names: Iterable[str]) -> "Structure":
        vocabulary = self.vocabulary.restrict(names)
        return Structure(
            vocabulary,
            self.universe,
            {n: self.relations[n] for n in vocabulary.names},
        )

    def _rebuild(self, universe, relations) -> "Structure":
        return type(self)(vocabulary=self.vocabulary, universe=universe, relations=relations)


def induced(A: Structure, vertices: Iterable[int]) -> Structure:
    """A[V]: universe V, every relation restricted to tuples inside V."""
    V = frozenset(vertices)
    outside = V - A.universe
    if outside:
        raise DomainError(f"Elements {sorted(outside)} are not in the universe")
    return A._rebuild(
        V,
        {
            name: frozenset(t for t in tuples if all(x in V for x in t))
            for name, tuples in A.relations.items()
        },
    )


@dataclass(frozen=True, eq=True)
class Graph(Structure):
    """Undirected simple graph: a structure over {E/2}, symmetric and irreflexive."""

    vocabulary: Vocabulary = GRAPH_VOCABULARY
    universe: frozenset[int] = frozenset()

    __hash__ = None

    def __post_init__(self):
        super().__post_init__()
        if self.vocabulary.symbols != GRAPH_VOCABULARY.symbols:
            raise DomainError(f"Graph vocabulary must be {{E/2}}, got {self.vocabulary.symbols}")
        edges = self.relations["E"]
        for v, w in edges:
            if v == w:
                raise DomainError(f"Self-loop at {v}")
            if (w, v) not in edges:
                raise DomainError(f"Edge ({v},{w}) has no reverse")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        tuples = set()
        for v, w in edges:
            tuples.add((v, w))
            tuples.add((w, v))
        return cls(universe=frozenset(vertices), relations={"E": frozenset(tuples)})

    @property
    def vertices(self) -> frozenset[int]:
        return self.universe

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        """Each undirected edge once, as (smaller, larger)."""
        return frozenset((v, w) for v, w in self.relations["E"] if v < w)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj = {v: set() for v in self.universe}
        for v, w in self.relations["E"]:
            adj[v].add(w)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self.adjacency[v]
        except KeyError:
            raise DomainError(f"Unknown vertex: {v}") from None

    def adjacent(self, v: int, w: int) -> bool:
        return (v, w) in self.relations["E"]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = sorted(vertices)
        return all(self.adjacent(v, w) for i, v in enumerate(vs) for w in vs[i + 1 :])

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.universe, set(self.edges) | set(extra))

    def without(self, removed: Iterable[int]) -> "Graph":
        return induced(self, self.universe - frozenset(removed))

    def to_networkx(self) -> nx.Graph:
        return to_networkx(self)


def gaifman(A: Structure) -> Graph:
    """Join v != w whenever they occur in a common tuple."""
    edges = set()
    for tuples in A.relations.values():
        for t in tuples:
            for v in t:
                for w in t:
                    if v != w:
                        edges.add((v, w))
    return Graph.from_edges(A.universe, edges)


def to_networkx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(sorted(G.universe))
    g.add_edges_from(sorted(G.edges))
    return g


def graph_from_networkx(g: nx.Graph) -> Graph:
    return Graph.from_edges((int(v) for v in g.nodes), ((int(v), int(w)) for v, w in g.edges if v != w))


def empty_structure(vocabulary: Vocabulary = GRAPH_VOCABULARY) -> Structure:
    return Structure(vocabulary, frozenset())
