import pytest

from msolift.config import get_settings, load_settings, override_settings, reset_settings
from msolift.errors import ConfigError


class TestSettings:
    def test_defaults(self):
        settings = get_settings()
        assert settings.structure_cap == 100000
        assert settings.lift_rank_cap == 4
        assert settings.universe_cap_for(2) == settings.universe_cap
        assert settings.universe_cap_for(3) == settings.universe_cap_q3

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("MSOLIFT_LIFT_RANK_CAP", "3")
        monkeypatch.setenv("MSOLIFT_STRUCTURE_CAP", "50")
        reset_settings()
        settings = get_settings()
        assert settings.lift_rank_cap == 3
        assert settings.structure_cap == 50

    def test_invalid_environment(self, monkeypatch):
        monkeypatch.setenv("MSOLIFT_RANK_CAP", "many")
        with pytest.raises(ConfigError, match="MSOLIFT_"):
            load_settings()


class TestOverrides:
    def test_copy_keeps_other_fields(self):
        before = get_settings()
        after = override_settings(lift_rank_cap=2)
        assert after.lift_rank_cap == 2
        assert after.model_dump(exclude={"lift_rank_cap"}) == before.model_dump(exclude={"lift_rank_cap"})
        assert get_settings() is after
        assert before.lift_rank_cap == 4

    def test_values_are_validated(self):
        with pytest.raises(ConfigError, match="Invalid setting override"):
            override_settings(structure_cap=0)
        with pytest.raises(ConfigError, match="Invalid setting override"):
            override_settings(jobs="several")
        assert get_settings().structure_cap == 100000

    def test_strings_are_coerced(self):
        assert override_settings(universe_cap="12").universe_cap == 12

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="Unknown settings"):
            override_settings(colour_cap=3)

    def test_reset(self):
        override_settings(rank_cap=1)
        reset_settings()
        assert get_settings().rank_cap == 3
