"""Command-line pipeline: analyze, aggregate, synth, graph, eval.

Every subcommand is deterministic given identical config and seed; the only
timestamp lives in manifest.json.  Logs go to stderr, data to files (or
stdout for `graph`).  Exit codes: 0 ok, 2 input error, 3 engine/environment
error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
import time
from multiprocessing import Pool
from pathlib import Path

from . import __version__
from .analytics import (
    GameSeries,
    eval_win_probability,
    load_groups,
    mean_curves,
    read_metrics_csv,
    series_for_classified,
    survival_curves,
    tension_vs_pieces,
    write_csv,
    write_metrics_csv,
    write_winprob_json,
)
from .board import ChessError, parse_fen
from .config import ConfigError, load_config
from .engine import EngineError, EngineHandle, annotate_corpus_evals, selfplay_game, selfplay_pgn
from .metrics import ContractViolation, compute_ply_metrics, CSV_COLUMNS
from .pgn import (
    CorpusSpec,
    GameRecord,
    SourceClass,
    ingest_corpus,
    parse_pgn_file,
    write_game_pgn,
)
from .synth import SynthConfig, max_tension_game
from .tension import build_tension_network

log = logging.getLogger("chess_tension.cli")

ENGINE_ENV_VAR = "CHESS_TENSION_ENGINE"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ENGINE = 3
EXIT_INTERNAL = 4


def _config_hash(args: argparse.Namespace) -> str:
    skip = {"func", "config"}
    payload = {k: str(v) for k, v in sorted(vars(args).items()) if k not in skip}
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def _write_manifest(out: Path, args: argparse.Namespace, extra: dict, *, name: str = "manifest.json") -> None:
    manifest = {
        "tool_version": __version__,
        "config_hash": _config_hash(args),
        "created_unix": int(time.time()),  # timestamps are confined to this file
    }
    manifest.update(extra)
    with open(out / name, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _engine_argv(args: argparse.Namespace) -> list[str]:
    path = getattr(args, "engine", None) or os.environ.get(ENGINE_ENV_VAR)
    if not path:
        raise EngineError(f"no engine configured (use --engine or ${ENGINE_ENV_VAR})")
    return path.split()


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    elo_filter = None
    if args.elo_min is not None or args.elo_max is not None:
        elo_filter = (args.elo_min or 0, args.elo_max if args.elo_max is not None else 4000)
    spec = CorpusSpec(
        paths=tuple(args.pgn),
        class_label=SourceClass(args.class_label),
        elo_filter=elo_filter,
        max_games=args.max_games,
        require_both_elos=args.require_both_elos,
        bin_width=args.bin_width,
    )
    kept, report, errors = ingest_corpus(spec, workers=args.workers)
    for err in errors:
        log.warning("skipped game: %s", err)
    log.info("ingest read=%d kept=%d skipped=%d", report.games_read, report.games_kept, report.games_skipped)

    if args.workers > 1:
        with Pool(args.workers) as pool:
            corpus = list(pool.imap(series_for_classified, kept, chunksize=4))
    else:
        corpus = [series_for_classified(cg) for cg in kept]

    write_metrics_csv(out / "metrics.csv", corpus)
    with open(out / "skips.json", "w", encoding="utf-8") as fh:
        fh.write(report.to_json() + "\n")
    _write_manifest(
        out,
        args,
        {
            "games": [
                {
                    "game_id": s.game_id,
                    "class": s.source_class.value,
                    "outcome": s.outcome.value,
                    "elo_bin": s.elo_bin,
                    "plies": len(s),
                }
                for s in corpus
            ],
            "ingest": json.loads(report.to_json()),
        },
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# aggregate


def _attach_evals(corpus: list[GameSeries], evals_path: Path) -> list[GameSeries]:
    from dataclasses import replace

    by_game: dict[str, dict[int, float]] = {}
    with open(evals_path, encoding="utf-8") as fh:
        header = fh.readline()
        if "evals v1" not in header:
            raise ValueError(f"unexpected evals schema: {header.strip()}")
        for line in fh:
            gid, ply, cp, depth = line.rstrip("\n").split(",")
            by_game.setdefault(gid, {})[int(ply)] = float(cp)
    out = []
    for s in corpus:
        if s.game_id in by_game:
            per_ply = by_game[s.game_id]
            evals = tuple(per_ply.get(k) for k in range(1, len(s) + 1))
            s = replace(s, evals=evals)
        out.append(s)
    return out


def cmd_aggregate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    corpus: list[GameSeries] = []
    for d in args.metrics:
        path = Path(d) / "metrics.csv"
        if not path.exists():
            raise FileNotFoundError(f"missing analyze artifact: {path}")
        part = read_metrics_csv(path)
        manifest_path = Path(d) / "manifest.json"
        if manifest_path.exists():
            listed = {g["game_id"] for g in json.loads(manifest_path.read_text()).get("games", [])}
            got = {s.game_id for s in part}
            if listed != got:
                raise ValueError(f"manifest mismatch under {d}: {len(listed)} listed vs {len(got)} present")
        evals_path = Path(d) / "evals.csv"
        if evals_path.exists():
            part = _attach_evals(part, evals_path)
        corpus.extend(part)
    if not corpus:
        raise FileNotFoundError("no game series found in the given metrics dirs")

    write_csv(out / "curves.csv", "curves", mean_curves(corpus))
    write_csv(out / "survival.csv", "survival", survival_curves(corpus))
    write_csv(out / "loads.csv", "loads", load_groups(corpus))
    write_csv(out / "tvp.csv", "tvp", tension_vs_pieces(corpus))
    write_winprob_json(out / "winprob.json", eval_win_probability(corpus))
    _write_manifest(out, args, {"n_games": len(corpus)})
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth


def cmd_synth(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.kind == "max-tension":
        pgn_chunks = []
        trace_rows = []
        for i in range(args.count):
            seed = args.seed + i
            res = max_tension_game(SynthConfig(max_plies=args.max_plies, rng_seed=seed))
            headers = {
                "Event": "greedy tension maximization",
                "Round": str(i),
                "Result": res.result_token,
                "Synthetic": "max-tension",
                "Seed": str(seed),
                "SourceClass": SourceClass.SYNTHETIC.value,
            }
            pgn_chunks.append(write_game_pgn(headers, res.sans, res.result_token))
            for t in res.trace:
                trace_rows.append((i, t.ply, t.move_uci, t.move_san, repr(t.tension), t.argmax_size, t.n_candidates))
        (out / "max_tension.pgn").write_text("\n".join(pgn_chunks), encoding="utf-8")
        with open(out / "max_tension_trace.csv", "w", encoding="utf-8") as fh:
            fh.write("# schema: synth-trace v1 (game,ply,uci,san,tension,argmax_size,n_candidates)\n")
            for row in trace_rows:
                fh.write(",".join(str(v) for v in row) + "\n")
        _write_manifest(out, args, {"games": args.count, "seeds": list(range(args.seed, args.seed + args.count))})
        return EXIT_OK

    # selfplay
    if args.depth < 2:
        raise ChessError("selfplay base depth must be >= 2")
    argv = _engine_argv(args)
    openings = _load_openings(args.openings, plies=12) if args.openings else [[]]
    rng = random.Random(args.seed)
    pgn_chunks = []
    gen_log = []
    with EngineHandle(argv) as white, EngineHandle(argv) as black:
        for i in range(args.games):
            opening = openings[i % len(openings)]
            res = selfplay_game(
                white, black, args.depth, opening, rng, a_is_white=(i % 2 == 0), ply_cap=args.ply_cap
            )
            pgn_chunks.append(
                selfplay_pgn(res, base_depth=args.depth, seed=args.seed, game_index=i, engine_name=white.name)
            )
            gen_log.append({"game": i, "depths": res.depths, "termination": res.termination, "result": res.result})
            log.info("selfplay game=%d plies=%d termination=%s", i, len(res.sans), res.termination)
    (out / "selfplay.pgn").write_text("\n".join(pgn_chunks), encoding="utf-8")
    with open(out / "selfplay_log.json", "w", encoding="utf-8") as fh:
        json.dump({"base_depth": args.depth, "seed": args.seed, "games": gen_log}, fh, indent=2)
        fh.write("\n")
    _write_manifest(out, args, {"games": args.games})
    return EXIT_OK


def _load_openings(path: str, plies: int) -> list[list[str]]:
    openings = []
    for item in parse_pgn_file(path):
        if isinstance(item, GameRecord) and len(item) >= plies:
            openings.append([m.uci() for m in item.moves[:plies]])
    if not openings:
        raise FileNotFoundError(f"no usable {plies}-ply openings in {path}")
    return openings


# ---------------------------------------------------------------------------
# graph


def cmd_graph(args: argparse.Namespace) -> int:
    import math

    pos = parse_fen(args.fen)
    g = build_tension_network(pos)
    m = compute_ply_metrics(g, pos, args.ply)
    payload = g.to_json_dict()
    payload["metrics"] = {
        name: (None if isinstance(v, float) and math.isnan(v) else v)
        for name in CSV_COLUMNS
        for v in [getattr(m, name)]
    }
    json.dump(payload, sys.stdout, indent=2, sort_keys=True, allow_nan=False)
    sys.stdout.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    argv = _engine_argv(args)
    games = []
    for path in args.pgn:
        stem = Path(path).stem
        for idx, item in enumerate(parse_pgn_file(path)):
            if isinstance(item, GameRecord):
                games.append((f"{stem}:{idx}", item))
    if args.max_games:
        games = games[: args.max_games]
    done_log = out / "evals_done.log"
    evals_path = out / "evals.csv"
    new_file = not evals_path.exists()
    with EngineHandle(argv) as handle:
        engine_name = handle.name  # recorded: results are engine-build-dependent
        results = annotate_corpus_evals(games, handle, depth=args.depth, done_log=done_log)
    with open(evals_path, "a", encoding="utf-8") as fh:
        if new_file:
            fh.write("# schema: evals v1 (game_id,ply,score_cp,depth)\n")
        for gid in sorted(results):
            for rec in results[gid]:
                fh.write(f"{gid},{rec.ply},{rec.score_cp!r},{rec.depth}\n")
    # eval often shares the analyze dir; keep its manifest separate
    _write_manifest(
        out,
        args,
        {"evaluated": sorted(results), "engine": argv, "engine_name": engine_name},
        name="eval_manifest.json",
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def _add_config_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file; explicit flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chess-tension", description=__doc__)
    parser.add_argument("--verbose", "-v", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="per-game interaction metrics from PGN files")
    p.add_argument("--pgn", action="append", required=True)
    p.add_argument("--class", dest="class_label", default="human", choices=[c.value for c in SourceClass])
    p.add_argument("--out", required=True)
    p.add_argument("--elo-min", type=int, default=None)
    p.add_argument("--elo-max", type=int, default=None)
    p.add_argument("--bin-width", type=int, default=100)
    p.add_argument("--max-games", type=int, default=None)
    p.add_argument("--require-both-elos", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_config_arg(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("aggregate", help="corpus curves/loads/survival from analyze output")
    p.add_argument("--metrics", action="append", required=True, help="analyze output dir (repeatable)")
    p.add_argument("--out", required=True)
    _add_config_arg(p)
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("synth", help="generate synthetic games")
    p.add_argument("kind", choices=["max-tension", "selfplay"])
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="max-tension: games to generate")
    p.add_argument("--max-plies", type=int, default=150)
    p.add_argument("--engine", default=None)
    p.add_argument("--depth", type=int, default=4, help="selfplay: base depth D")
    p.add_argument("--games", type=int, default=2, help="selfplay: games to generate")
    p.add_argument("--openings", default=None, help="selfplay: PGN whose first 12 plies seed games")
    p.add_argument("--ply-cap", type=int, default=400)
    _add_config_arg(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("graph", help="tension network JSON for one FEN")
    p.add_argument("--fen", required=True)
    p.add_argument("--ply", type=int, default=1)
    _add_config_arg(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("eval", help="annotate games with fixed-depth engine evaluations")
    p.add_argument("--pgn", action="append", required=True)
    p.add_argument("--engine", default=None)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--max-games", type=int, default=None)
    p.add_argument("--out", required=True)
    _add_config_arg(p)
    p.set_defaults(func=cmd_eval)

    return parser


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Fill from the config file any option not given explicitly on the CLI."""
    if not getattr(args, "config", None):
        return
    values = load_config(args.config)
    given = {a.lstrip("-").split("=")[0].replace("-", "_") for a in argv if a.startswith("--")}
    for key, raw in values.items():
        if key in given or not hasattr(args, key):
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, raw.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, key, int(raw))
        elif isinstance(current, list):
            setattr(args, key, raw.split())
        elif current is None and key in ("elo_min", "elo_max", "max_games"):
            setattr(args, key, int(raw))
        else:
            setattr(args, key, raw)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s %(message)s",
    )
    try:
        _apply_config(args, parser, argv)
        return args.func(args)
    except (ContractViolation, AssertionError) as exc:
        log.error("internal invariant violated: %s", exc)
        return EXIT_INTERNAL
    except EngineError as exc:
        log.error("engine: %s", exc)
        return EXIT_ENGINE
    except (FileNotFoundError, ChessError, ConfigError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
