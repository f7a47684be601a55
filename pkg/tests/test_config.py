import json

import pytest

from artifact.config import (
    OUT_ENV,
    ConfigError,
    HFPSSConfig,
    default_out_dir,
    load_json,
    parse_range,
)


def test_hfpss_config_round_trip():
    cfg = HFPSSConfig(scenario="TMF13", window=20, s_max=32, truncation=2)
    assert HFPSSConfig.from_json(cfg.to_json()) == cfg


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="unknown"):
        HFPSSConfig.from_json({"scenario": "tmf13", "windw": 4})
    with pytest.raises(ConfigError):
        HFPSSConfig.from_json([1, 2])


def test_negative_window_rejected():
    with pytest.raises(ConfigError):
        HFPSSConfig(window=-1)


@pytest.mark.parametrize("text, rng", [("-24:24", (-24, 24)), ("0:8", (0, 8))])
def test_parse_range(text, rng):
    assert parse_range(text) == rng


def test_parse_range_bad():
    with pytest.raises(ConfigError):
        parse_range("1-2")


def test_load_json(tmp_path):
    p = tmp_path / "a.json"
    p.write_text(json.dumps({"x": 1}))
    assert load_json(p) == {"x": 1}
    p.write_text("{oops")
    with pytest.raises(ConfigError):
        load_json(p)
    with pytest.raises(ConfigError):
        load_json(tmp_path / "missing.json")


def test_out_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv(OUT_ENV, str(tmp_path))
    assert default_out_dir() == tmp_path
