import random

import pytest
from hypothesis import given, strategies as st

from msolift.core.decomposition import NodeKind
from msolift.errors import CapacityError, DomainError
from msolift.otxx.orders import (
    any_compatible_order,
    block_order,
    blockify,
    canonical_form,
    compatible_orders,
    is_compatible,
    random_block_order,
    random_compatible_order,
    sequences_of,
)
from tests.graphs import extension, path, star


def a_node(X):
    return next(t for t in sorted(X.nodes) if X.tree.kind(t) == NodeKind.A_NODE and len(X.tree.children[t]) > 1)


class TestCompatibleOrders:
    def test_path_has_a_single_order(self, p3):
        X = extension(p3, 1)
        assert compatible_orders(X) == [block_order(X)]

    def test_claw(self, claw):
        X = extension(claw, 1)
        orders = compatible_orders(X)
        assert len(orders) == 4
        assert all(is_compatible(X, o) for o in orders)
        assert any_compatible_order(X) == orders[0]
        assert compatible_orders(X, "any") == [orders[0]]

    def test_cap(self, claw):
        X = extension(claw, 1)
        with pytest.raises(CapacityError):
            compatible_orders(X, cap=3)

    def test_unknown_mode(self, p3):
        with pytest.raises(DomainError):
            compatible_orders(extension(p3, 1), "sample")

    def test_incompatible(self, p3):
        X = extension(p3, 1)
        order = block_order(X)
        assert not is_compatible(X, tuple(reversed(order)))
        assert not is_compatible(X, order[:-1])


class TestBlockOrders:
    def test_block_orders_are_compatible(self, claw):
        X = extension(claw, 1)
        t = a_node(X)
        for sequence in (X.tree.children[t], tuple(reversed(X.tree.children[t]))):
            order = block_order(X, {t: sequence})
            assert is_compatible(X, order)
            assert sequences_of(X, order)[t] == sequence

    def test_nodes_first_then_elements(self, claw):
        X = extension(claw, 1)
        order = block_order(X)
        assert set(order[: len(X.nodes)]) == X.nodes
        assert order[0] == X.root

    def test_blockify(self, claw):
        X = extension(claw, 1)
        blocks = {block_order(X, {a_node(X): s}) for s in [X.tree.children[a_node(X)], X.tree.children[a_node(X)][::-1]]}
        for order in compatible_orders(X):
            assert blockify(X, order) in blocks
        with pytest.raises(DomainError):
            blockify(X, tuple(sorted(X.universe, reverse=True)))

    def test_bad_sequence(self, claw):
        X = extension(claw, 1)
        with pytest.raises(DomainError, match="not an ordering"):
            block_order(X, {a_node(X): (99,)})

    @given(st.integers(min_value=0, max_value=2**16))
    def test_random_block_orders_are_compatible(self, seed):
        X = extension(path(4), 1)
        assert is_compatible(X, random_block_order(X, random.Random(seed)))

    @given(st.integers(min_value=0, max_value=2**16))
    def test_random_compatible_orders_are_compatible(self, seed):
        X = extension(star(4), 1)
        assert is_compatible(X, random_compatible_order(X, random.Random(seed)))

    def test_random_compatible_orders_reach_every_order(self, claw):
        X = extension(claw, 1)
        rng = random.Random(3)
        drawn = {random_compatible_order(X, rng) for _ in range(200)}
        assert drawn == set(compatible_orders(X))
        assert any(order != blockify(X, order) for order in drawn)

    def test_canonical_form(self, claw):
        X = extension(claw, 1)
        C = canonical_form(X)
        assert C.universe == frozenset(range(len(X.universe)))
        assert C.relations["V_T"] == {(i,) for i in range(len(X.nodes))}
