""" Tests for src.config. """

import pytest

from src.config import Settings, get_settings


@pytest.fixture
def fresh_settings():
    get_settings.cache_clear()
    yield get_settings
    get_settings.cache_clear()


class TestSettings:
    """Environment overrides."""

    def test_defaults(self, fresh_settings, monkeypatch):
        for name in ("WORKBENCH_CIRCLE_NODES", "WORKBENCH_JET_TOLERANCE", "WORKBENCH_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)

        settings = fresh_settings()
        assert settings.circle_nodes == 256
        assert settings.jet_tolerance == 1e-10
        assert settings.log_level == "WARNING"

    def test_environment_override(self, fresh_settings, monkeypatch):
        monkeypatch.setenv("WORKBENCH_CIRCLE_NODES", "512")
        monkeypatch.setenv("WORKBENCH_LOG_LEVEL", "info")

        settings = fresh_settings()
        assert settings.circle_nodes == 512
        assert settings.log_level == "INFO"

    def test_malformed_value_falls_back(self, fresh_settings, monkeypatch):
        monkeypatch.setenv("WORKBENCH_GREEN_TOLERANCE", "tight")

        assert fresh_settings().green_tolerance == 1e-7

    def test_with_overrides_skips_none(self):
        settings = Settings().with_overrides(probe_nodes=128, circle_nodes=None)

        assert settings.probe_nodes == 128
        assert settings.circle_nodes == 256
