import pytest
from hypothesis import given

from msolift.core.decomposition import NodeKind, SegmentedDecomposition, TreeDecomposition
from msolift.decomp.atoms import atom_decomposition
from msolift.decomp.oracles import treewidth_exact
from msolift.decomp.segment import segment
from msolift.errors import ContractError, DomainError
from msolift.otxx.build import BagOrderProvider, Otxx, bfs_bag_orders, build_otxx, otxx_symbols
from msolift.otxx.coloring import coloring_bag_orders, degeneracy_order, proper_coloring
from tests.graphs import cycle, extension, graphs, path, star


class TestBuild:
    def test_nodes_follow_the_elements(self, p3):
        X = extension(p3, 1)
        assert min(X.nodes) == 3
        assert X.universe == X.elements | X.nodes
        assert X.elements == {0, 1, 2}

    def test_vocabulary(self, p3):
        X = extension(p3, 1)
        arities = X.structure.vocabulary.arities
        for name, arity in otxx_symbols(2).items():
            assert arities[name] == arity
        assert arities["E"] == 2
        assert "S_3" not in arities

    def test_root_sets(self, claw):
        X = extension(claw, 1)
        assert X.sigma[X.root] == frozenset()
        assert X.gamma[X.root] == X.elements
        assert X.top[0] == X.root

    def test_sibling_sequence(self, claw):
        X = extension(claw, 1)
        (a,) = [t for t in X.nodes if X.tree.kind(t) == NodeKind.A_NODE]
        assert X.sibling_sequence(X.root) == X.tree.children[X.root]
        assert len(X.tree.children[a]) == 2

    def test_nodes_precede_elements(self, claw):
        X = extension(claw, 1)
        for t in X.nodes:
            assert X.precedes(X.root, t)
            for v in X.elements:
                assert X.precedes(t, v)
                assert not X.precedes(v, t)

    @given(graphs(max_vertices=5))
    def test_partial_order(self, G):
        X = extension(G, max(treewidth_exact(G), 0))
        universe = sorted(X.universe)
        for x in universe:
            assert X.precedes(x, x)
            for y in universe:
                if x != y and X.precedes(x, y):
                    assert not X.precedes(y, x)
                    for z in universe:
                        if X.precedes(y, z):
                            assert X.precedes(x, z)

    def test_bag_elements_are_linear(self, k4):
        X = extension(k4, 3)
        (t,) = X.nodes
        assert X.sort_linear(X.elements) == X.bag_orders[t]

    def test_separator_index_relations(self, p3):
        X = extension(p3, 1)
        S1 = X.structure.relations["S_1"]
        assert {(t, v) for t, v in S1} == {(t, min(X.sigma[t])) for t in X.nodes if X.sigma[t]}


class TestBuildErrors:
    def test_needs_a_segmented_decomposition(self, p3):
        with pytest.raises(ContractError, match="Not segmented"):
            build_otxx(p3, atom_decomposition(p3, 1), BagOrderProvider.input_id(), 2)

    def test_needs_a_valid_decomposition(self, p3):
        S = segment(atom_decomposition(path(4), 1))
        with pytest.raises(ContractError, match="invalid"):
            build_otxx(p3, S, BagOrderProvider.input_id(), 2)

    def test_adhesion(self, k4_minus_edge):
        S = segment(TreeDecomposition(0, {0: {0, 1, 2}, 1: {1, 2, 3}}, {0: (1,)}))
        assert isinstance(S, SegmentedDecomposition)
        with pytest.raises(ContractError, match="Adhesion 2"):
            build_otxx(k4_minus_edge, S, BagOrderProvider.input_id(), 1)

    def test_bag_orders_must_cover_bags(self, p3):
        X = extension(p3, 1)
        orders = dict(X.bag_orders)
        orders[X.root] = orders[X.root][:1]
        with pytest.raises(DomainError, match="Bag order"):
            Otxx(X.base, X.tree, orders, X.k)

    def test_node_ids_must_not_clash(self, p3):
        S = segment(atom_decomposition(p3, 1))
        orders = {t: tuple(sorted(b)) for t, b in S.bags.items()}
        with pytest.raises(DomainError, match="also element ids"):
            Otxx(p3, S, orders, 2)


class TestBagOrders:
    def test_input_id(self, claw):
        X = extension(claw, 1)
        assert all(list(o) == sorted(o) for o in X.bag_orders.values())

    def test_bfs(self):
        G = path(4)
        D = TreeDecomposition.single(range(4))
        assert bfs_bag_orders(G, D)[0] == (0, 1, 2, 3)
        assert bfs_bag_orders(star(3), TreeDecomposition.single([1, 2, 3, 0]))[0] == (0, 1, 2, 3)

    def test_coloring_puts_the_separator_first(self):
        G = path(3)
        X = extension(G, 1, BagOrderProvider.coloring(1))
        for t in X.nodes:
            order = X.bag_orders[t]
            assert set(order[: len(X.sigma[t])]) == X.sigma[t]

    def test_coloring_needs_k(self, p3):
        with pytest.raises(ContractError, match="needs k"):
            BagOrderProvider("coloring").orders(p3, TreeDecomposition.single(range(3)))

    def test_unknown_strategy(self, p3):
        with pytest.raises(DomainError):
            BagOrderProvider("random").orders(p3, TreeDecomposition.single(range(3)))


class TestColoring:
    def test_degeneracy_order(self, claw):
        assert degeneracy_order(claw) == [1, 2, 0, 3]

    def test_proper(self, c4):
        colors = proper_coloring(c4, 2)
        assert all(colors[v] != colors[w] for v, w in c4.edges)
        assert set(colors.values()) == {0, 1}

    def test_too_few_colors(self, k4):
        with pytest.raises(ContractError, match="more than 3 colors"):
            proper_coloring(k4, 3)

    def test_separator_must_be_a_clique(self):
        D = TreeDecomposition(0, {0: {0, 1, 2}, 1: {0, 2, 3}}, {0: (1,)})
        with pytest.raises(ContractError, match="not a clique"):
            coloring_bag_orders(cycle(4), D, 2)
