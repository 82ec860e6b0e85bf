"""Corpus-level aggregation of per-game metric series.

All statistics are computed from (game_id-sorted, fsum-accumulated) value
lists, so aggregate output is bit-identical under any input ordering.
Curves condition on games still running at each ply and stop at PLY_CAP.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .board import parse_fen, _apply_unchecked
from .metrics import CSV_COLUMNS, PlyMetrics, compute_ply_metrics
from .pgn import ClassifiedGame, GameRecord, Outcome, SourceClass
from .tension import build_tension_network

PLY_CAP = 150
TVP_PLIES = (30, 60, 90)


@dataclass(frozen=True)
class GameSeries:
    game_id: str
    source_class: SourceClass
    outcome: Outcome
    elo_bin: Optional[int]
    metrics: tuple[PlyMetrics, ...]
    evals: Optional[tuple[Optional[float], ...]] = None  # cp, White perspective
    depth: Optional[int] = None  # fixed engine depth for self-play groups

    def __len__(self) -> int:
        return len(self.metrics)


def series_for_record(game_id: str, record: GameRecord, elo_bin: Optional[int] = None) -> GameSeries:
    """Per-ply interaction metrics for one game."""
    rows = []
    pos = parse_fen(record.initial_fen)
    for ply, move in enumerate(record.moves, start=1):
        pos = _apply_unchecked(pos, move)
        rows.append(compute_ply_metrics(build_tension_network(pos), pos, ply))
    depth = None
    if "BaseDepth" in record.headers:
        try:
            depth = int(record.headers["BaseDepth"])
        except ValueError:
            depth = None
    return GameSeries(
        game_id=game_id,
        source_class=record.source_class,
        outcome=record.outcome,
        elo_bin=elo_bin,
        metrics=tuple(rows),
        depth=depth,
    )


def series_for_classified(cg: ClassifiedGame) -> GameSeries:
    return series_for_record(cg.game_id, cg.record, cg.elo_bin)


# ---------------------------------------------------------------------------
# Order-independent statistics


def _stats(values: Sequence[tuple[str, float]]) -> tuple[float, float, int]:
    """(mean, population std, n) accumulated in game_id order."""
    ordered = [v for _, v in sorted(values, key=lambda kv: kv[0])]
    n = len(ordered)
    if n == 0:
        return math.nan, math.nan, 0
    mean = math.fsum(ordered) / n
    var = math.fsum((v - mean) ** 2 for v in ordered) / n
    return mean, math.sqrt(var), n


def default_groups(s: GameSeries) -> list[str]:
    """Class curve plus draw/decisive split; Unknown only in the class curve."""
    groups = [s.source_class.value]
    if s.outcome == Outcome.DRAW:
        groups.append(f"{s.source_class.value}:draw")
    elif s.outcome in (Outcome.WHITE_WIN, Outcome.BLACK_WIN):
        groups.append(f"{s.source_class.value}:decisive")
    return groups


def mean_curves(
    corpus: Sequence[GameSeries],
    groups: Callable[[GameSeries], list[str]] = default_groups,
    fields: Sequence[str] = CSV_COLUMNS[1:],
) -> list[tuple[str, int, str, float, float, int]]:
    """Rows (group, ply, field, mean, std, n); std over games alive at the ply."""
    if not corpus:
        raise ValueError("empty corpus")
    buckets: dict[tuple[str, int, str], list[tuple[str, float]]] = {}
    for s in corpus:
        for g in groups(s):
            for m in s.metrics[:PLY_CAP]:
                for f in fields:
                    v = getattr(m, f)
                    if isinstance(v, float) and math.isnan(v):
                        continue
                    buckets.setdefault((g, m.ply, f), []).append((s.game_id, float(v)))
    rows = []
    for (g, ply, f) in sorted(buckets):
        mean, std, n = _stats(buckets[(g, ply, f)])
        rows.append((g, ply, f, mean, std, n))
    return rows


def survival_curves(corpus: Sequence[GameSeries]) -> list[tuple[str, int, float, int]]:
    """Rows (group, ply, percent, n_alive) per (class, outcome) group.

    percent at ply k = 100 * (#games of the group with length >= k) / (group
    size at ply 1); non-increasing and starting at 100 by construction.
    """
    lens: dict[str, list[int]] = {}
    for s in corpus:
        if s.outcome == Outcome.DRAW:
            key = f"{s.source_class.value}:draw"
        elif s.outcome in (Outcome.WHITE_WIN, Outcome.BLACK_WIN):
            key = f"{s.source_class.value}:decisive"
        else:
            continue
        lens.setdefault(key, []).append(len(s))
    rows = []
    for key in sorted(lens):
        lengths = lens[key]
        total = len(lengths)
        for ply in range(1, max(lengths) + 1):
            alive = sum(1 for L in lengths if L >= ply)
            rows.append((key, ply, 100.0 * alive / total, alive))
    return rows


def tension_load(series: GameSeries) -> float:
    """Sum of tension over plies 1..min(length, PLY_CAP)."""
    return math.fsum(m.tension for m in series.metrics[:PLY_CAP])


def load_groups(corpus: Sequence[GameSeries]) -> list[tuple[str, str, str, float, float, int]]:
    """Rows (class, key_type, key, mean, std, n) of per-game tension loads.

    Every class gets an `all` row; games with an Elo bin contribute
    per-bin rows, self-play games per-depth rows.
    """
    buckets: dict[tuple[str, str, str], list[tuple[str, float]]] = {}
    for s in corpus:
        load = tension_load(s)
        cls = s.source_class.value
        buckets.setdefault((cls, "all", ""), []).append((s.game_id, load))
        if s.elo_bin is not None:
            buckets.setdefault((cls, "elo", str(s.elo_bin)), []).append((s.game_id, load))
        if s.depth is not None:
            buckets.setdefault((cls, "depth", str(s.depth)), []).append((s.game_id, load))
    rows = []
    for key in sorted(buckets):
        mean, std, n = _stats(buckets[key])
        rows.append((*key, mean, std, n))
    return rows


def tension_vs_pieces(
    corpus: Sequence[GameSeries], plies: Sequence[int] = TVP_PLIES
) -> list[tuple[str, int, int, float, float, int]]:
    """Rows (class, ply, n_pieces, mean tension, std, n) at the probe plies."""
    if not corpus:
        raise ValueError("empty corpus")
    buckets: dict[tuple[str, int, int], list[tuple[str, float]]] = {}
    for s in corpus:
        for ply in plies:
            if len(s) < ply:
                continue
            m = s.metrics[ply - 1]
            key = (s.source_class.value, ply, m.n_pieces)
            buckets.setdefault(key, []).append((s.game_id, m.tension))
    rows = []
    for key in sorted(buckets):
        mean, std, n = _stats(buckets[key])
        rows.append((*key, mean, std, n))
    return rows


def eval_win_probability(
    corpus: Sequence[GameSeries], threshold_cp: float = 100.0, at_ply: int = 40
) -> dict[str, dict[str, float]]:
    """P(side holding >= threshold_cp at the probe ply eventually wins), per class.

    Draws count as non-wins; games without the advantage, without an eval at
    the probe ply, or with an unknown outcome are excluded.  Classes with no
    qualifying games are absent from the result.
    """
    tallies: dict[str, list[tuple[str, float]]] = {}
    for s in corpus:
        if s.outcome == Outcome.UNKNOWN or s.evals is None or len(s.evals) < at_ply:
            continue
        cp = s.evals[at_ply - 1]
        if cp is None:
            continue
        if cp >= threshold_cp:
            won = s.outcome == Outcome.WHITE_WIN
        elif cp <= -threshold_cp:
            won = s.outcome == Outcome.BLACK_WIN
        else:
            continue
        tallies.setdefault(s.source_class.value, []).append((s.game_id, 1.0 if won else 0.0))
    out = {}
    for cls, vals in sorted(tallies.items()):
        mean, _, n = _stats(vals)
        out[cls] = {"probability": mean, "n_games": n}
    return out


# ---------------------------------------------------------------------------
# File output (schemas versioned in the header comment)

SCHEMAS = {
    "curves": "# schema: curves v1 (group,ply,field,mean,std,n)",
    "survival": "# schema: survival v1 (group,ply,percent,n_alive)",
    "loads": "# schema: loads v1 (class,key_type,key,mean,std,n)",
    "tvp": "# schema: tvp v1 (class,ply,n_pieces,mean,std,n)",
    "metrics": "# schema: metrics v1 (game_id,class,outcome,elo_bin,depth," + ",".join(CSV_COLUMNS) + ")",
}


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: Path, schema: str, rows: Iterable[tuple]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(SCHEMAS[schema] + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_csv(path: Path) -> tuple[str, list[list[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    return header, rows


def write_winprob_json(path: Path, probs: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"schema": "winprob v1", "threshold_cp": 100, "at_ply": 40, "classes": probs}, fh, indent=2)
        fh.write("\n")


def write_metrics_csv(path: Path, corpus: Sequence[GameSeries]) -> None:
    """One combined metrics file, one row per (game, ply)."""
    from .metrics import metrics_to_row

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(SCHEMAS["metrics"] + "\n")
        for s in corpus:
            prefix = [s.game_id, s.source_class.value, s.outcome.value,
                      "" if s.elo_bin is None else str(s.elo_bin),
                      "" if s.depth is None else str(s.depth)]
            for m in s.metrics:
                fh.write(",".join(prefix + metrics_to_row(m)) + "\n")


def read_metrics_csv(path: Path) -> list[GameSeries]:
    """Inverse of write_metrics_csv (per-ply evals live in evals.csv instead)."""
    from .metrics import metrics_from_row

    header, rows = read_csv(path)
    if "metrics v1" not in header:
        raise ValueError(f"unexpected schema header: {header}")
    by_game: dict[str, dict] = {}
    order: list[str] = []
    for row in rows:
        gid, cls, outcome, bin_, depth = row[:5]
        if gid not in by_game:
            by_game[gid] = {
                "class": SourceClass(cls),
                "outcome": Outcome(outcome),
                "elo_bin": int(bin_) if bin_ else None,
                "depth": int(depth) if depth else None,
                "metrics": [],
            }
            order.append(gid)
        by_game[gid]["metrics"].append(metrics_from_row(row[5:]))
    out = []
    for gid in order:
        info = by_game[gid]
        out.append(
            GameSeries(
                game_id=gid,
                source_class=info["class"],
                outcome=info["outcome"],
                elo_bin=info["elo_bin"],
                metrics=tuple(sorted(info["metrics"], key=lambda m: m.ply)),
                depth=info["depth"],
            )
        )
    return out
