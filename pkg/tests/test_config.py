"""
Tests for environment-driven configuration.
"""

from cuspforge.utils import config as config_module
from cuspforge.utils.config import Config


class TestIntEnv:
    def test_default_when_unset(self, monkeypatch):
        monkeypatch.delenv("CUSPFORGE_TEST_VALUE", raising=False)
        assert config_module._int_env("CUSPFORGE_TEST_VALUE", 7) == 7

    def test_default_when_blank(self, monkeypatch):
        monkeypatch.setenv("CUSPFORGE_TEST_VALUE", "  ")
        assert config_module._int_env("CUSPFORGE_TEST_VALUE", 7) == 7

    def test_parses_underscores(self, monkeypatch):
        monkeypatch.setenv("CUSPFORGE_TEST_VALUE", "2_000_000")
        assert config_module._int_env("CUSPFORGE_TEST_VALUE", 7) == 2000000

    def test_unparsable(self, monkeypatch):
        monkeypatch.setenv("CUSPFORGE_TEST_VALUE", "lots")
        assert config_module._int_env("CUSPFORGE_TEST_VALUE", 7) is None


class TestValidate:
    def test_defaults_are_valid(self, monkeypatch):
        monkeypatch.setattr(Config, "COSET_CAP", 1_000_000)
        monkeypatch.setattr(Config, "WORKERS", 1)
        monkeypatch.setattr(Config, "LOG_LEVEL", "WARNING")
        assert Config.validate() == []
        assert Config.is_valid()

    def test_bad_cap(self, monkeypatch):
        monkeypatch.setattr(Config, "COSET_CAP", None)
        errors = Config.validate()
        assert any("CUSPFORGE_COSET_CAP" in e for e in errors)
        assert not Config.is_valid()

    def test_bad_workers(self, monkeypatch):
        monkeypatch.setattr(Config, "WORKERS", 0)
        assert any("CUSPFORGE_WORKERS" in e for e in Config.validate())

    def test_bad_log_level(self, monkeypatch):
        monkeypatch.setattr(Config, "LOG_LEVEL", "CHATTY")
        assert any("LOG_LEVEL" in e for e in Config.validate())
