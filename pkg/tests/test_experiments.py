import json
import os

import pytest

import twsketch as tw
from twsketch.errors import ConfigError
from twsketch.experiments import (
    ExperimentConfig,
    ResultRecord,
    read_config_file,
    read_csv,
    run_experiment,
    write_csv,
)


def test_config_defaults_and_validation():
    cfg = ExperimentConfig(kind="embed", d=5, k=(50,), B=100)
    assert cfg.resolved_B() == 100
    assert ExperimentConfig(kind="embed").resolved_B() == 10_000
    assert ExperimentConfig(kind="conv").resolved_B() == 100
    assert ExperimentConfig(kind="embed", d=7).resolve_k(7) == (140,)
    ratios = ExperimentConfig(kind="conv", d=10).resolve_k(10)
    assert ratios[0] == 20 and ratios[-1] == 200
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="nope")
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="embed", mode="bogus")
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="conv", sketches=("warp",))
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="conv", generator="warp")


def test_config_file_parsing_and_overrides(tmp_path):
    cfg_file = tmp_path / "exp.cfg"
    cfg_file.write_text(
        "# embedding experiment\n"
        "kind = embed\n"
        "d = 5\n"
        "k = 40\n"
        "B = 123\n"
        "sketches = gaussian, cw\n"
        "header = false\n"
    )
    mapping = read_config_file(cfg_file)
    assert mapping["B"] == "123"
    cfg = ExperimentConfig.from_mapping(mapping)
    assert cfg.d == 5 and cfg.k == (40,) and cfg.B == 123
    assert cfg.header is False
    # CLI-style override wins
    mapping["B"] = 77
    assert ExperimentConfig.from_mapping(mapping).B == 77
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"kind": "embed", "mystery": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"d": 5})
    with pytest.raises(ConfigError):
        read_config_file(write_bad(tmp_path))


def write_bad(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("kind embed\n")
    return path


def test_embed_wishart_experiment_and_replay(tmp_path):
    cfg = ExperimentConfig(kind="embed", mode="wishart", d=4, k=(40,), B=400,
                           seed=5, out=str(tmp_path / "run1"))
    record = run_experiment(cfg)
    assert "wishart" in record.results
    stats = record.results["wishart"]
    assert stats["B"] == 400 and stats["k"] == 40 and stats["d"] == 4
    assert 0.0 <= stats["sup_gap"] <= 1.0
    record_path = tmp_path / "run1" / "embed.json"
    assert record_path.exists()

    loaded = ResultRecord.read_json(record_path)
    replay_cfg = loaded.replay_config()
    run_experiment(replay_cfg, out_dir=str(tmp_path / "run2"))
    first = (tmp_path / "run1" / "embed_trials_wishart.csv").read_bytes()
    second = (tmp_path / "run2" / "embed_trials_wishart.csv").read_bytes()
    assert first == second
    first_cdf = (tmp_path / "run1" / "embed_cdf_wishart.csv").read_bytes()
    second_cdf = (tmp_path / "run2" / "embed_cdf_wishart.csv").read_bytes()
    assert first_cdf == second_cdf


def test_embed_sketch_mode(tmp_path):
    cfg = ExperimentConfig(kind="embed", mode="sketch", n=300, d=3, k=(30,),
                           B=50, seed=2, sketches=("cw", "uniform"),
                           out=str(tmp_path))
    record = run_experiment(cfg)
    assert set(record.results) == {"clarkson-woodruff", "uniform"}
    assert (tmp_path / "embed_trials_clarkson_woodruff.csv").exists()
    assert (tmp_path / "embed_cdf_uniform.csv").exists()


def test_csv_round_trip_is_byte_identical(tmp_path):
    cfg = ExperimentConfig(kind="embed", mode="wishart", d=3, k=(30,), B=25,
                           seed=1, out=str(tmp_path))
    run_experiment(cfg)
    path = tmp_path / "embed_cdf_wishart.csv"
    header, rows = read_csv(path)
    parsed = [[float(v) for v in row] for row in rows]
    out = tmp_path / "rewritten.csv"
    write_csv(out, header, parsed)
    assert out.read_bytes() == path.read_bytes()


def test_conv_experiment(tmp_path):
    cfg = ExperimentConfig(kind="conv", n=400, d=4, k=(16, 80), B=10, seed=3,
                           sketches=("gaussian",), out=str(tmp_path),
                           label="song")
    record = run_experiment(cfg)
    rates = record.results["rates"]
    assert len(rates) == 2
    header, rows = read_csv(tmp_path / "song_rates.csv")
    assert header == ["kind", "k", "rate", "lo", "hi", "gamma_hat"]
    assert len(rows) == 2
    assert rows[0][0] == "gaussian"
    assert (tmp_path / "song.json").exists()
    # replay from the embedded config reproduces bit-identical rates
    loaded = ResultRecord.read_json(tmp_path / "song.json")
    run_experiment(loaded.replay_config(), out_dir=str(tmp_path / "replay"))
    assert ((tmp_path / "replay" / "song_rates.csv").read_bytes()
            == (tmp_path / "song_rates.csv").read_bytes())


def test_timing_experiment(tmp_path):
    cfg = ExperimentConfig(kind="timing", n=2000, d=8, k=(64,), reps=3, seed=4,
                           sketches=("uniform", "cw"), out=str(tmp_path))
    record = run_experiment(cfg)
    assert set(record.results) == {"uniform", "clarkson-woodruff"}
    for stats in record.results.values():
        assert stats["reps"] == 3
        assert stats["mean_seconds"] > 0
        assert stats["median_seconds"] > 0
    header, rows = read_csv(tmp_path / "timing_times.csv")
    assert header == ["kind", "rep", "seconds"]
    assert len(rows) == 6


def test_tw_table_experiment(tmp_path):
    cfg = ExperimentConfig(kind="tw-table", out=str(tmp_path))
    record = run_experiment(cfg)
    assert record.results["rows"] == 1601
    header, rows = read_csv(tmp_path / "tw_table.csv")
    assert header == ["z", "cdf"]
    assert len(rows) == 1601


def test_error_record_written(tmp_path):
    cfg = ExperimentConfig(kind="embed", mode="sketch", data=str(tmp_path / "nope.csv"),
                           d=3, k=(30,), B=10, out=str(tmp_path))
    with pytest.raises(FileNotFoundError):
        run_experiment(cfg)
    err = json.loads((tmp_path / "embed_error.json").read_text())
    assert err["error"] == "FileNotFoundError"
    assert err["config"]["kind"] == "embed"


def test_outdir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("TWSKETCH_OUTDIR", str(tmp_path / "envout"))
    cfg = ExperimentConfig(kind="tw-table")
    run_experiment(cfg)
    assert (tmp_path / "envout" / "tw_table.csv").exists()


def test_record_is_self_describing(tmp_path):
    cfg = ExperimentConfig(kind="embed", mode="wishart", d=3, k=(30,), B=20,
                           seed=11, out=str(tmp_path))
    record = run_experiment(cfg)
    payload = json.loads((tmp_path / "embed.json").read_text())
    assert payload["version"] == tw.__version__
    assert payload["config"]["seed"] == 11
    assert payload["created"]
    assert payload["files"]
    for path in payload["files"]:
        assert os.path.exists(path)
