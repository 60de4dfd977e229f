from dataclasses import dataclass

import networkx as nx

from msolift.core.structures import Graph


@dataclass(frozen=True)
class CliqueSeparator:
    """A clique whose removal separates the witness vertices."""

    vertices: frozenset[int]
    witness: tuple[int, int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sort_key(self) -> tuple:
        return len(self.vertices), tuple(sorted(self.vertices))


def components(G: Graph) -> list[frozenset[int]]:
    """Connected components sorted by smallest vertex."""
    return sorted((frozenset(c) for c in nx.connected_components(G.to_networkx())), key=min)


def is_connected(G: Graph) -> bool:
    return len(components(G)) <= 1


def separation_witness(G: Graph, S: frozenset[int]) -> tuple[int, int] | None:
    parts = components(G.without(S))
    if len(parts) < 2:
        return None
    return min(parts[0]), min(parts[1])


def clique_separators(G: Graph, c: int) -> list[CliqueSeparator]:
    """
    All vertex sets S with |S| <= c that induce a clique and leave G - S
    disconnected, each with a pair of separated vertices. The empty set is
    included when G itself is disconnected.
    """
    found = []
    witness = separation_witness(G, frozenset())
    if witness is not None:
        found.append(CliqueSeparator(frozenset(), witness))
    if c >= 1:
        for clique in nx.enumerate_all_cliques(G.to_networkx()):
            if len(clique) > c:
                break
            S = frozenset(clique)
            witness = separation_witness(G, S)
            if witness is not None:
                found.append(CliqueSeparator(S, witness))
    return sorted(found, key=CliqueSeparator.sort_key)


def is_c_atom(G: Graph, c: int) -> bool:
    """Connected and without clique separators of size at most c. The empty graph counts as an atom."""
    if not G.vertices:
        return True
    return not clique_separators(G, c)


def is_atom(G: Graph) -> bool:
    return is_c_atom(G, len(G.vertices))
