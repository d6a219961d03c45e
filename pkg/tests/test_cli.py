"""CLI behaviour: subcommands, config handling, exit codes, artifacts."""

import json
import subprocess
import sys

import pytest

from ugs_topics import data_path
from ugs_topics.cli import EXIT_BACKEND, EXIT_CONFIG, EXIT_DATA, EXIT_OK, main

PLANTED = str(data_path("planted_reviews.jsonl"))
SAMPLE = str(data_path("reviews_sample.jsonl"))

FAST_TRAIN = ["--k", "2", "--iterations", "60", "--burn-in", "20"]


def run(*argv):
    return main(list(argv))


class TestIngest:
    def test_bundled_run(self, tmp_path, capsys):
        assert run("--out", str(tmp_path), "ingest-venues") == EXIT_OK
        ranking = (tmp_path / "ranking.csv").read_text().splitlines()
        assert ranking[0] == "district,total_likes,venue_count"
        assert ranking[1] == "Dublin 2,1776,3"
        assert ranking[2] == "Dublin 8,696,1"
        venues = (tmp_path / "venues.csv").read_text().splitlines()
        assert len(venues) == 9  # header + the eight bundled parks

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run("--out", str(a), "ingest-venues")
        run("--out", str(b), "ingest-venues")
        assert (a / "ranking.csv").read_bytes() == (b / "ranking.csv").read_bytes()
        assert (a / "venues.csv").read_bytes() == (b / "venues.csv").read_bytes()

    def test_per_venue_mean_reorders(self, tmp_path):
        # Dublin 2: 1776/3 = 592 mean; Dublin 8: 696/1 = 696 mean
        assert run("--out", str(tmp_path), "ingest-venues", "--per-venue-mean") == EXIT_OK
        lines = (tmp_path / "ranking.csv").read_text().splitlines()
        assert lines[1].startswith("Dublin 8,")
        assert lines[2].startswith("Dublin 2,")

    def test_limit_caps_each_search(self, tmp_path):
        assert run("--out", str(tmp_path), "ingest-venues", "--limit", "1") == EXIT_OK
        lines = (tmp_path / "ranking.csv").read_text().splitlines()
        # only the first fixture venue per district survives
        assert lines[1] == "Dublin 2,1191,1"

    def test_missing_fixture_entry_is_backend_error(self, tmp_path, capsys):
        fixture = tmp_path / "f.json"
        fixture.write_text('{"searches": {}, "likes": {}}')
        code = run("--out", str(tmp_path), "ingest-venues", "--fixture", str(fixture))
        assert code == EXIT_BACKEND
        assert "Dublin 1" in capsys.readouterr().err

    def test_empty_districts_file(self, tmp_path, capsys):
        districts = tmp_path / "d.csv"
        districts.write_text("district,area,lat,lon\n")
        code = run("--out", str(tmp_path), "ingest-venues", "--districts", str(districts))
        assert code == EXIT_DATA
        assert "no districts" in capsys.readouterr().err


class TestTrain:
    def test_artifacts_and_report(self, tmp_path):
        code = run("--out", str(tmp_path), "--seed", "3", "train",
                   "--reviews", PLANTED, *FAST_TRAIN)
        assert code == EXIT_OK
        for name in ("model.json", "vocab.json", "surface_forms.json", "topics.csv"):
            assert (tmp_path / name).exists()
        lines = (tmp_path / "topics.csv").read_text().splitlines()
        assert lines[0] == "topic,rank,word,weight"
        assert len(lines) == 1 + 2 * 6  # two topics, default six words

    def test_seed_changes_model(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run("--out", str(a), "--seed", "3", "train", "--reviews", PLANTED, *FAST_TRAIN)
        run("--out", str(b), "--seed", "4", "train", "--reviews", PLANTED, *FAST_TRAIN)
        assert (a / "model.json").read_bytes() != (b / "model.json").read_bytes()

    def test_markdown_format(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text('{"report_format": "markdown"}')
        code = run("--config", str(config), "--out", str(tmp_path), "--seed", "1",
                   "train", "--reviews", PLANTED, *FAST_TRAIN)
        assert code == EXIT_OK
        assert (tmp_path / "topics.md").exists()

    def test_all_stopword_corpus_is_data_error(self, tmp_path, capsys):
        reviews = tmp_path / "r.jsonl"
        line = {"title": "", "body": "the and of with is", "rating": 3,
                "date": "2019-01-01", "venue_id": "v"}
        reviews.write_text("\n".join(json.dumps(line) for _ in range(3)) + "\n")
        code = run("--out", str(tmp_path), "train", "--reviews", str(reviews))
        assert code == EXIT_DATA
        assert "empty after preprocessing" in capsys.readouterr().err

    def test_missing_reviews_flag(self, tmp_path, capsys):
        assert run("--out", str(tmp_path), "train") == EXIT_CONFIG

    def test_date_filter_removing_everything(self, tmp_path, capsys):
        code = run("--out", str(tmp_path), "train", "--reviews", SAMPLE,
                   "--date-from", "2031-01-01")
        assert code == EXIT_DATA
        assert "date filter" in capsys.readouterr().err


class TestSweep:
    CONFIG = {
        "grid": {"alphas": ["symmetric", 0.1], "betas": [0.2], "ks": [2],
                 "iterations": 50, "burn_in": 15}
    }

    def test_sweep_writes_report_and_winner(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps(self.CONFIG))
        code = run("--config", str(config), "--out", str(tmp_path),
                   "sweep", "--reviews", PLANTED)
        assert code == EXIT_OK
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "alpha,beta,coherence,perplexity,k,coherence_umass,perplexity_exp"
        assert len(lines) == 3
        assert (tmp_path / "model.json").exists()

    def test_single_cell_grid(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps(
            {"grid": {"alphas": [0.1], "betas": [0.2], "ks": [2],
                      "iterations": 30, "burn_in": 10}}
        ))
        code = run("--config", str(config), "--out", str(tmp_path),
                   "sweep", "--reviews", PLANTED)
        assert code == EXIT_OK
        assert len((tmp_path / "sweep.csv").read_text().splitlines()) == 2


class TestEvaluateAndReport:
    @pytest.fixture()
    def trained(self, tmp_path):
        run("--out", str(tmp_path), "--seed", "2", "train", "--reviews", PLANTED, *FAST_TRAIN)
        return tmp_path

    def test_evaluate_saved_model(self, trained):
        code = run("--out", str(trained), "evaluate", "--reviews", PLANTED)
        assert code == EXIT_OK
        lines = (trained / "evaluation.csv").read_text().splitlines()
        assert lines[0].startswith("alpha,beta,coherence,perplexity,k")
        assert len(lines) == 2
        assert lines[1].startswith("symmetric,0.2,")

    def test_report_regenerates_without_retraining(self, trained):
        model_before = (trained / "model.json").read_bytes()
        code = run("--out", str(trained), "report", "--format", "markdown",
                   "--top-words", "3")
        assert code == EXIT_OK
        assert (trained / "topics.md").exists()
        assert (trained / "model.json").read_bytes() == model_before

    def test_report_without_artifacts(self, tmp_path, capsys):
        assert run("--out", str(tmp_path), "report") == EXIT_DATA
        assert "model.json" in capsys.readouterr().err

    def test_vocab_mismatch_detected(self, trained, tmp_path):
        other = tmp_path / "other"
        run("--out", str(other), "--seed", "2", "train", "--reviews", SAMPLE,
            "--k", "2", "--iterations", "30", "--burn-in", "10")
        (trained / "vocab.json").write_bytes((other / "vocab.json").read_bytes())
        assert run("--out", str(trained), "report") == EXIT_DATA


class TestConfigErrors:
    def test_model_and_grid_conflict(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text('{"model": {"k": 2}, "grid": {"ks": [2]}}')
        code = run("--config", str(config), "--out", str(tmp_path),
                   "train", "--reviews", PLANTED)
        assert code == EXIT_CONFIG
        assert "both" in capsys.readouterr().err

    def test_unknown_key(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text('{"reviws": "x.jsonl"}')
        assert run("--config", str(config), "report") == EXIT_CONFIG
        assert "reviws" in capsys.readouterr().err

    def test_bad_report_format(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text('{"report_format": "pdf"}')
        assert run("--config", str(config), "report") == EXIT_CONFIG

    def test_config_file_missing(self, capsys):
        assert run("--config", "/nonexistent/cfg.json", "report") == EXIT_CONFIG

    def test_config_not_json(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text("not json at all")
        assert run("--config", str(config), "report") == EXIT_CONFIG

    def test_bad_hyperparams_are_config_errors(self, tmp_path):
        code = run("--out", str(tmp_path), "train", "--reviews", PLANTED,
                   "--k", "2", "--beta", "-1")
        assert code == EXIT_CONFIG


class TestEntryPoint:
    def test_console_script_help(self):
        result = subprocess.run(
            [sys.executable, "-m", "ugs_topics.cli", "--help"],
            capture_output=True, text=True,
        )
        assert result.returncode == 0
        for command in ("ingest-venues", "train", "evaluate", "sweep", "report"):
            assert command in result.stdout
