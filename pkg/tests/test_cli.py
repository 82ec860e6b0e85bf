import json
import sys
from pathlib import Path

import pytest

from chess_tension.cli import main

TOY_ENGINE = f"{sys.executable} {Path(__file__).parent / 'toy_uci.py'}"

PGN = (
    '[Event "a"]\n[Result "1-0"]\n[WhiteElo "1610"]\n[BlackElo "1590"]\n\n'
    "1. e4 e5 2. Qh5 Nc6 3. Bc4 Nf6 4. Qxf7# 1-0\n\n"
    '[Event "b"]\n[Result "1/2-1/2"]\n[WhiteElo "2410"]\n[BlackElo "2390"]\n\n'
    "1. d4 d5 2. Nf3 Nf6 3. e3 e6 1/2-1/2\n\n"
    '[Event "c"]\n[Result "0-1"]\n[WhiteElo "1500"]\n[BlackElo "1520"]\n\n'
    "1. f3 e5 2. g4 Qh4# 0-1\n"
)


@pytest.fixture
def corpus_file(tmp_path):
    f = tmp_path / "games.pgn"
    f.write_text(PGN, encoding="utf-8")
    return f


def read_without_manifest(out: Path) -> dict[str, bytes]:
    return {
        p.name: p.read_bytes()
        for p in sorted(out.rglob("*"))
        if p.is_file() and p.name not in ("manifest.json", "eval_manifest.json")
    }


class TestAnalyze:
    def test_three_games_manifest(self, corpus_file, tmp_path):
        out = tmp_path / "out"
        assert main(["analyze", "--pgn", str(corpus_file), "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert len(manifest["games"]) == 3
        assert manifest["ingest"]["games_kept"] == 3
        assert (out / "metrics.csv").exists()
        assert (out / "skips.json").exists()

    def test_elo_filter(self, corpus_file, tmp_path):
        out = tmp_path / "out"
        code = main(
            ["analyze", "--pgn", str(corpus_file), "--out", str(out), "--elo-min", "1500", "--elo-max", "1700"]
        )
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert len(manifest["games"]) == 2
        assert {g["elo_bin"] for g in manifest["games"]} == {1500, 1600}

    def test_rerun_is_byte_identical_outside_manifest(self, corpus_file, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        main(["analyze", "--pgn", str(corpus_file), "--out", str(out1)])
        main(["analyze", "--pgn", str(corpus_file), "--out", str(out2)])
        assert read_without_manifest(out1) == read_without_manifest(out2)

    def test_workers_do_not_change_output(self, corpus_file, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        main(["analyze", "--pgn", str(corpus_file), "--out", str(out1)])
        main(["analyze", "--pgn", str(corpus_file), "--out", str(out2), "--workers", "3"])
        assert read_without_manifest(out1) == read_without_manifest(out2)

    def test_unreadable_path_exit_2(self, tmp_path):
        assert main(["analyze", "--pgn", str(tmp_path / "nope.pgn"), "--out", str(tmp_path / "o")]) == 2

    def test_config_file_with_flag_override(self, corpus_file, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("elo_min = 1500\nelo-max = 1700\nbin_width = 200\n")
        out = tmp_path / "out"
        code = main(
            ["analyze", "--pgn", str(corpus_file), "--out", str(out), "--config", str(cfg), "--bin-width", "100"]
        )
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert len(manifest["games"]) == 2  # config filter applied
        assert {g["elo_bin"] for g in manifest["games"]} == {1500, 1600}  # flag won over 200


class TestAggregate:
    def test_five_outputs(self, corpus_file, tmp_path):
        adir, gdir = tmp_path / "a", tmp_path / "g"
        main(["analyze", "--pgn", str(corpus_file), "--out", str(adir)])
        assert main(["aggregate", "--metrics", str(adir), "--out", str(gdir)]) == 0
        for name in ("curves.csv", "survival.csv", "loads.csv", "tvp.csv", "winprob.json"):
            assert (gdir / name).exists(), name
        header = (gdir / "curves.csv").read_text().splitlines()[0]
        assert header.startswith("# schema: curves v1")

    def test_missing_inputs_exit_2(self, tmp_path):
        assert main(["aggregate", "--metrics", str(tmp_path / "none"), "--out", str(tmp_path / "g")]) == 2

    def test_manifest_mismatch_detected(self, corpus_file, tmp_path):
        adir = tmp_path / "a"
        main(["analyze", "--pgn", str(corpus_file), "--out", str(adir)])
        manifest = json.loads((adir / "manifest.json").read_text())
        manifest["games"].append({"game_id": "ghost:9", "class": "human", "outcome": "*", "elo_bin": None, "plies": 1})
        (adir / "manifest.json").write_text(json.dumps(manifest))
        assert main(["aggregate", "--metrics", str(adir), "--out", str(tmp_path / "g")]) == 2


class TestSynthCli:
    def test_seeded_max_tension_batch_reproducible(self, tmp_path):
        o1, o2 = tmp_path / "s1", tmp_path / "s2"
        args = ["synth", "max-tension", "--count", "2", "--seed", "5", "--max-plies", "6"]
        assert main(args + ["--out", str(o1)]) == 0
        assert main(args + ["--out", str(o2)]) == 0
        assert read_without_manifest(o1) == read_without_manifest(o2)
        text = (o1 / "max_tension.pgn").read_text()
        assert '[Synthetic "max-tension"]' in text
        assert (o1 / "max_tension_trace.csv").read_text().count("\n") >= 12

    def test_selfplay_with_toy_engine_reproducible(self, corpus_file, tmp_path):
        args = [
            "synth", "selfplay",
            "--engine", TOY_ENGINE,
            "--depth", "2",
            "--games", "2",
            "--seed", "11",
            "--ply-cap", "24",
        ]
        out1, out2 = tmp_path / "sp1", tmp_path / "sp2"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert (out1 / "selfplay.pgn").exists()
        log = json.loads((out1 / "selfplay_log.json").read_text())
        assert len(log["games"]) == 2
        assert read_without_manifest(out1) == read_without_manifest(out2)

    def test_selfplay_aggregates_into_depth_keyed_loads(self, tmp_path):
        sp, adir, gdir = tmp_path / "sp", tmp_path / "a", tmp_path / "g"
        main(
            [
                "synth", "selfplay",
                "--engine", TOY_ENGINE,
                "--depth", "3",
                "--games", "2",
                "--seed", "5",
                "--ply-cap", "20",
                "--out", str(sp),
            ]
        )
        main(["analyze", "--pgn", str(sp / "selfplay.pgn"), "--class", "synthetic", "--out", str(adir)])
        main(["aggregate", "--metrics", str(adir), "--out", str(gdir)])
        loads = (gdir / "loads.csv").read_text().splitlines()
        assert any(row.startswith("synthetic,depth,3,") for row in loads)

    def test_missing_engine_exit_3(self, tmp_path, monkeypatch):
        monkeypatch.delenv("CHESS_TENSION_ENGINE", raising=False)
        assert main(["synth", "selfplay", "--games", "1", "--out", str(tmp_path / "sp")]) == 3

    def test_invalid_depth_exit_2(self, tmp_path):
        code = main(
            ["synth", "selfplay", "--engine", TOY_ENGINE, "--depth", "1", "--games", "1", "--out", str(tmp_path / "x")]
        )
        assert code == 2


class TestGraphCli:
    def test_start_fen_empty_edges(self, capsys):
        assert main(["graph", "--fen", "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["edges"] == []
        assert payload["metrics"]["tension"] == 0.0

    def test_pawn_standoff_single_edge(self, capsys):
        assert main(["graph", "--fen", "k7/8/8/3p4/4P3/8/8/7K w - - 0 1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["edges"] == [
            {"from": "e4", "to": "d5", "weight": 2, "kind": "attack", "source": "e4"}
        ]
        assert payload["metrics"]["tension"] == pytest.approx(2.0)

    def test_bad_fen_exit_2(self):
        assert main(["graph", "--fen", "not a fen"]) == 2


class TestEvalCli:
    def test_eval_and_resume(self, corpus_file, tmp_path):
        out = tmp_path / "ev"
        args = [
            "eval", "--pgn", str(corpus_file), "--engine", TOY_ENGINE, "--depth", "2", "--out", str(out)
        ]
        assert main(args) == 0
        evals = (out / "evals.csv").read_text().splitlines()
        assert evals[0].startswith("# schema: evals v1")
        n_rows = len(evals) - 1
        assert n_rows == 7 + 6 + 4  # total plies over the three games
        # resume: second run evaluates nothing new, file unchanged
        assert main(args) == 0
        assert len((out / "evals.csv").read_text().splitlines()) - 1 == n_rows

    def test_winprob_from_evals(self, corpus_file, tmp_path):
        adir, gdir = tmp_path / "a", tmp_path / "g"
        main(["analyze", "--pgn", str(corpus_file), "--out", str(adir)])
        main(["eval", "--pgn", str(corpus_file), "--engine", TOY_ENGINE, "--depth", "2", "--out", str(adir)])
        main(["aggregate", "--metrics", str(adir), "--out", str(gdir)])
        payload = json.loads((gdir / "winprob.json").read_text())
        assert payload["schema"] == "winprob v1"
        # the fixture games are short; no game reaches ply 40, so no classes qualify
        assert payload["classes"] == {}
