from msolift.core.unionfind import UnionFind


class TestUnionFind:
    def test_classes_sorted_by_smallest_member(self):
        uf = UnionFind()
        uf.union(5, 3)
        uf.union(1, 4)
        uf.add(2)
        uf.union(4, 5)
        assert uf.classes() == [frozenset({1, 3, 4, 5}), frozenset({2})]
        assert uf.find(5) == 1

    def test_union_is_idempotent(self):
        uf = UnionFind()
        uf.union(2, 1)
        uf.union(1, 2)
        assert uf.classes() == [frozenset({1, 2})]

    def test_find_adds_singletons(self):
        uf = UnionFind()
        assert uf.find(7) == 7
        assert uf.classes() == [frozenset({7})]
