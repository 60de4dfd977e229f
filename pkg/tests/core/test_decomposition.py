import pytest

from msolift.core.decomposition import (
    NodeKind,
    SegmentedDecomposition,
    TreeDecomposition,
    cone,
    is_segmented,
    metrics,
    segmented_violations,
    separator,
    torso,
    validate_decomposition,
)
from msolift.errors import DomainError
from tests.graphs import cycle, path


def path_decomposition() -> TreeDecomposition:
    """Bags {0,1} - {1,2} - {2,3} for the path 0-1-2-3."""
    return TreeDecomposition(
        root=0,
        bags={0: {0, 1}, 1: {1, 2}, 2: {2, 3}},
        children={0: [1], 1: [2]},
    )


class TestTreeDecomposition:
    def test_children_are_sorted_and_parents_known(self):
        D = TreeDecomposition(root=0, bags={0: set(), 2: set(), 1: set()}, children={0: [2, 1]})
        assert D.children[0] == (1, 2)
        assert D.parent(2) == 0
        assert D.parent(0) is None

    def test_unreachable_node(self):
        with pytest.raises(DomainError, match="not reachable"):
            TreeDecomposition(root=0, bags={0: set(), 1: set()})

    def test_two_parents(self):
        with pytest.raises(DomainError, match="more than one parent"):
            TreeDecomposition(root=0, bags={0: set(), 1: set(), 2: set()}, children={0: [1, 2], 1: [2]})

    def test_orders_and_subtrees(self):
        D = TreeDecomposition(root=0, bags={t: set() for t in range(4)}, children={0: [1, 3], 1: [2]})
        assert D.preorder() == (0, 1, 2, 3)
        assert D.postorder() == (2, 1, 3, 0)
        assert D.subtree(1) == {1, 2}
        assert D.is_ancestor(0, 2)
        assert not D.is_ancestor(3, 2)
        assert D.leaves() == (2, 3)

    def test_unknown_node(self):
        with pytest.raises(DomainError, match="Unknown node"):
            path_decomposition().bag(9)


class TestValidation:
    def test_valid_path_decomposition(self):
        assert validate_decomposition(path(4), path_decomposition()).ok

    def test_cover_violation_names_the_edge(self):
        report = validate_decomposition(cycle(4), path_decomposition())
        conditions = {(v.condition, v.witness) for v in report.violations}
        assert ("cover", (0, 3)) in conditions

    def test_connectedness_violation(self):
        D = TreeDecomposition(root=0, bags={0: {0, 1}, 1: {2}, 2: {1, 2}}, children={0: [1], 1: [2]})
        report = validate_decomposition(path(3), D)
        assert [v.witness for v in report.violations if v.condition == "connectedness"] == [(1,)]

    def test_bag_outside_universe(self):
        D = TreeDecomposition.single({0, 7})
        report = validate_decomposition(path(1), D)
        assert report.violations[0].condition == "bag"


class TestMetrics:
    def test_width_and_adhesion(self):
        m = metrics(path_decomposition())
        assert (m.width, m.adhesion, m.empty) == (1, 1, False)

    def test_all_empty_bags(self):
        m = metrics(TreeDecomposition.single(set()))
        assert m.empty and m.width == 0 and m.adhesion == 0

    def test_separator_and_cone(self):
        D = path_decomposition()
        assert separator(D, 0) == frozenset()
        assert separator(D, 2) == {2}
        assert cone(D, 1) == {1, 2, 3}

    def test_torso_completes_shared_separators(self):
        D = TreeDecomposition(root=0, bags={0: {0, 1, 2}, 1: {0, 2, 3}}, children={0: [1]})
        T = torso(cycle(4), D, 0)
        assert T.adjacent(0, 2)


class TestSegmented:
    def segmented(self) -> TreeDecomposition:
        return TreeDecomposition(
            root=0,
            bags={0: {0, 1}, 1: {1}, 2: {1, 2}},
            children={0: [1], 1: [2]},
            kinds={0: NodeKind.B_NODE, 1: NodeKind.A_NODE, 2: NodeKind.B_NODE},
        )

    def test_valid_segmented_decomposition(self):
        D = self.segmented()
        assert is_segmented(D)
        S = SegmentedDecomposition.of(D)
        assert S.is_a_node(1) and S.is_b_node(2)

    def test_a_node_leaf_is_reported(self):
        D = TreeDecomposition(
            root=0,
            bags={0: {0, 1}, 1: {1}},
            children={0: [1]},
            kinds={0: NodeKind.B_NODE, 1: NodeKind.A_NODE},
        )
        assert any("leaf 1" in p for p in segmented_violations(D))
        with pytest.raises(DomainError, match="Not segmented"):
            SegmentedDecomposition.of(D)

    def test_missing_kinds(self):
        assert segmented_violations(path_decomposition())

    def test_equal_kinds_on_an_edge(self):
        D = TreeDecomposition(
            root=0,
            bags={0: {0, 1}, 1: {1, 2}},
            children={0: [1]},
            kinds={0: NodeKind.B_NODE, 1: NodeKind.B_NODE},
        )
        assert any("joins two b-nodes" in p for p in segmented_violations(D))
