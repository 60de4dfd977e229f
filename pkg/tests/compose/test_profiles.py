import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from msolift.compose.engine import CompositionEngine
from msolift.compose.profiles import ProfileEngine, local_part, otxx_vocabulary
from msolift.config import override_settings
from msolift.core.decomposition import NodeKind
from msolift.errors import CapacityError, ContractError, DomainError
from msolift.otxx.orders import blockify, block_order, random_compatible_order
from msolift.otxx.replace import sub_otxx
from msolift.types.engine import cmso_type
from msolift.types.registry import TypeRegistry
from tests.graphs import extension, graphs, path, star


def restricted(order, Y):
    return tuple(x for x in order if x in Y.universe)


class TestRootProfiles:
    @settings(max_examples=25)
    @given(graphs(max_vertices=4), st.randoms())
    def test_rank_one_matches_direct_typing(self, G, rnd):
        X = extension(G, 3)
        assume(X.structure.size <= 12)
        registry = TypeRegistry()
        engine = ProfileEngine(1, registry=registry)
        order = random_compatible_order(X, rnd)
        theta = engine.as_type(engine.profile_of(X, order))
        assert theta == cmso_type(X.structure, (), 1, 1, blockify(X, order), registry, universe_cap=12)

    @settings(max_examples=15)
    @given(graphs(max_vertices=3), st.randoms())
    def test_rank_two_matches_direct_typing(self, G, rnd):
        X = extension(G, 2)
        assume(X.structure.size <= 10)
        registry = TypeRegistry()
        engine = ProfileEngine(2, registry=registry)
        order = random_compatible_order(X, rnd)
        theta = engine.as_type(engine.profile_of(X, order))
        assert theta == cmso_type(X.structure, (), 2, 1, blockify(X, order), registry)

    @pytest.mark.parametrize("G", [path(2), path(3), star(3)], ids=["p2", "p3", "claw"])
    def test_counting_matches_direct_typing(self, G):
        X = extension(G, 1)
        registry = TypeRegistry()
        engine = ProfileEngine(1, c=3, registry=registry)
        theta = engine.as_type(engine.profile_of(X))
        assert theta == cmso_type(X.structure, (), 1, 3, block_order(X), registry, universe_cap=20)

    def test_anchored_profiles_match_subtree_types(self, claw):
        X = extension(claw, 1)
        registry = TypeRegistry()
        engine = ProfileEngine(1, registry=registry)
        direct = CompositionEngine(1, registry=registry, universe_cap=32)
        order = block_order(X)
        for t, profile in engine.profiles(X).items():
            Y = sub_otxx(X, t)
            assert engine.as_type(profile, anchored=True) == direct.anchored_type(Y, restricted(order, Y))


class TestProfileEngine:
    def test_equal_leaves_share_a_profile(self, claw):
        X = extension(claw, 1)
        engine = ProfileEngine(1, registry=TypeRegistry())
        leaves = X.tree.leaves()
        first = engine.compose(X, leaves[0], (), {})
        second = engine.compose(X, leaves[1], (), {})
        assert not first.hit and second.hit
        assert first.type_id == second.type_id
        assert engine.stats.hits == 1 and engine.stats.misses == 1

    def test_no_subtree_is_typed_whole(self):
        X = extension(path(8), 1)
        engine = ProfileEngine(2, scope="elements", registry=TypeRegistry())
        engine.profile_of(X)
        assert engine.largest_local < X.structure.size
        assert len(engine) > 0

    def test_elements_scope_never_chooses_nodes(self, claw):
        X = extension(claw, 1)
        t = X.root
        part = local_part(X, t, X.sibling_sequence(t), otxx_vocabulary(X), "elements")
        assert part.choosable & part.nodes == 0
        assert local_part(X, t, X.sibling_sequence(t), otxx_vocabulary(X), "all").choosable & part.nodes

    def test_rank_cap(self):
        override_settings(lift_rank_cap=2)
        with pytest.raises(CapacityError, match="lift rank cap 2"):
            ProfileEngine(3)

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            ProfileEngine(1, c=0)
        with pytest.raises(DomainError, match="scope"):
            ProfileEngine(1, scope="nodes")

    def test_compose_checks_its_inputs(self, claw):
        X = extension(claw, 1)
        engine = ProfileEngine(1, registry=TypeRegistry())
        a = next(t for t in X.tree.preorder() if X.tree.kind(t) == NodeKind.A_NODE)
        children = X.tree.children[a]
        with pytest.raises(ContractError, match="does not enumerate"):
            engine.compose(X, a, children[:-1], {})
        with pytest.raises(ContractError, match="miss children"):
            engine.compose(X, a, children, {})

    def test_unknown_profile(self):
        with pytest.raises(ContractError, match="Unknown profile"):
            ProfileEngine(1, registry=TypeRegistry()).payload(10**6)
