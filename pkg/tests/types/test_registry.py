import pytest

from msolift.errors import ContractError, DomainError
from msolift.logic.library import sentence
from msolift.types.engine import cmso_type, mso_type
from msolift.types.models import describe_type, dump_registry, load_registry
from msolift.types.registry import Realization, TypeMeta, TypeRegistry
from msolift.types.semantics import satisfies
from tests.graphs import cycle, path

META = TypeMeta(q=0, c=1, arity=0, vocabulary=(("E", 2),))


class TestTypeRegistry:
    def test_ids_are_dense_and_stable(self):
        registry = TypeRegistry()
        assert registry.intern(("a",), META) == 0
        assert registry.intern(("b",), META) == 1
        assert registry.intern(("a",), META) == 0
        assert len(registry) == 2
        assert 1 in registry and 2 not in registry

    def test_missing_realization(self):
        registry = TypeRegistry()
        theta = registry.intern(("a",), META)
        assert not registry.has_realization(theta)
        with pytest.raises(ContractError, match="no stored realization"):
            registry.realization(theta)

    def test_offer_keeps_the_smaller(self):
        registry = TypeRegistry()
        theta = registry.intern(("a",), META)
        registry.offer(theta, Realization(path(3), ()))
        registry.offer(theta, Realization(path(4), ()))
        registry.offer(theta, Realization(path(2), ()))
        assert registry.realization(theta).size == 2
        assert registry.realized() == [theta]

    def test_unregistered_meta(self):
        with pytest.raises(ContractError):
            TypeRegistry().meta(0)


class TestRegistryJson:
    def test_dump_and_load_keep_ids_and_answers(self):
        registry = TypeRegistry()
        plain = mso_type(path(3), (), 2, registry=registry)
        counted = cmso_type(cycle(4), (), 2, 2, registry=registry)
        ordered = cmso_type(path(2), (), 2, 1, (1, 0), registry)

        restored = load_registry(dump_registry(registry))
        assert len(restored) == len(registry)
        for type_id, payload, meta, _ in registry.items():
            assert restored.payload(type_id) == payload
            assert restored.meta(type_id) == meta
        assert satisfies(plain, sentence("has_edge"), restored)
        assert satisfies(counted, sentence("even_parity"), restored)
        assert satisfies(ordered, sentence("has_minimum"), restored)
        assert restored.realization(ordered).order == (1, 0)

    def test_types_computed_after_loading_reuse_ids(self):
        registry = TypeRegistry()
        theta = mso_type(path(3), (), 2, registry=registry)
        restored = load_registry(dump_registry(registry))
        assert mso_type(path(3).relabel({0: 2, 1: 1, 2: 0}), (), 2, registry=restored) == theta

    def test_invalid_json(self):
        with pytest.raises(DomainError, match="Invalid registry"):
            load_registry('{"entries": [{"type_id": "x"}]}')

    def test_describe(self):
        registry = TypeRegistry()
        theta = cmso_type(path(2), [{0}], 1, 2, (0, 1), registry)
        description = describe_type(theta, registry)
        assert (description.q, description.c, description.arity) == (1, 2, 1)
        assert description.ordered
        assert ("<=", 2) in [tuple(s) for s in description.vocabulary]
