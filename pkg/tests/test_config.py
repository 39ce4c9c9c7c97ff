"""Tests for src/config.py"""

import pytest

from src.config import (
    DEFAULT_CONFIG_PATH,
    Settings,
    get_settings,
    load_config,
    reset_settings,
    settings_scope,
)
from src.exceptions import ConfigError


@pytest.fixture(autouse=True)
def _no_env_config(monkeypatch):
    monkeypatch.delenv("QSN_CONFIG", raising=False)
    reset_settings()
    yield
    reset_settings()


class TestLoadConfig:
    def test_project_file_matches_defaults(self):
        assert load_config(DEFAULT_CONFIG_PATH) == Settings()

    def test_partial_file_keeps_defaults(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("samples: 50\nseed: 7\n")
        settings = load_config(str(path))
        assert settings.samples == 50
        assert settings.seed == 7
        assert settings.enumeration_guard == Settings().enumeration_guard

    def test_env_variable_selects_file(self, tmp_path, monkeypatch):
        path = tmp_path / "c.yaml"
        path.write_text("jobs: 3\n")
        monkeypatch.setenv("QSN_CONFIG", str(path))
        assert load_config().jobs == 3

    def test_unknown_key_is_ignored(self, tmp_path, caplog):
        path = tmp_path / "c.yaml"
        path.write_text("samples: 5\ncolour: blue\n")
        assert load_config(str(path)).samples == 5
        assert "colour" in caplog.text

    def test_empty_file(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("")
        assert load_config(str(path)) == Settings()

    @pytest.mark.parametrize("line", ["enumeration_guard: 0", "jobs: -2", "samples: many",
                                      "log_level: LOUD"])
    def test_invalid_values(self, tmp_path, line):
        path = tmp_path / "c.yaml"
        path.write_text(line + "\n")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_explicit_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "absent.yaml"))


class TestSettings:
    def test_with_overrides_skips_none(self):
        settings = Settings().with_overrides(jobs=4, samples=None)
        assert settings.jobs == 4
        assert settings.samples == Settings().samples

    def test_get_settings_is_cached(self):
        assert get_settings() is get_settings()

    def test_scope_installs_and_restores(self):
        outer = get_settings()
        custom = Settings(chunk_size=7)
        with settings_scope(custom):
            assert get_settings() is custom
            with settings_scope(Settings(samples=3)):
                assert get_settings().samples == 3
            assert get_settings() is custom
        assert get_settings() is outer
