import json

import pytest

from fqc.config import ENV_VAR, RunConfig, load_config
from fqc.errors import ConfigError


def test_defaults_validate():
    config = RunConfig().validate()
    assert config.threads == 1
    assert config.truncation_radius == 100.0


def test_file_round_trip(tmp_path):
    path = tmp_path / "run.json"
    original = RunConfig(match_tol=1e-7, threads=3, taper=0.1 + 0.2)
    original.save_to_file(str(path))
    loaded = RunConfig.load_from_file(str(path))
    assert loaded == original


def test_unknown_key_is_rejected():
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"match_tolerance": 1e-6})


@pytest.mark.parametrize("changes", [
    {"match_tol": 0.0},
    {"threads": 0},
    {"coverage_floor": 1.5},
    {"gamma_factor": 1.0},
])
def test_invalid_values(changes):
    with pytest.raises(ConfigError):
        RunConfig().replace(**changes)


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig.load_from_file(str(tmp_path / "absent.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        RunConfig.load_from_file(str(bad))


def test_environment_variable(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    path.write_text(json.dumps({"max_peaks": 7}))
    monkeypatch.setenv(ENV_VAR, str(path))
    assert load_config().max_peaks == 7


def test_explicit_file_beats_environment(tmp_path, monkeypatch):
    env_file = tmp_path / "env.json"
    env_file.write_text(json.dumps({"max_peaks": 7}))
    explicit = tmp_path / "explicit.json"
    explicit.write_text(json.dumps({"max_peaks": 9}))
    monkeypatch.setenv(ENV_VAR, str(env_file))
    assert load_config(str(explicit)).max_peaks == 9


def test_threads_override(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    config = load_config(threads=4)
    assert config.threads == 4
    assert config.seed == 0
