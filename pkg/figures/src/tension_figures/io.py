"""Readers for the analytics CSV/JSON schemas.

Each reader validates the versioned schema header and fails with column
diagnostics rather than rendering from misread data.  Rendering never
recomputes metrics; these are pure views of the emitted files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


class SchemaError(ValueError):
    pass


EXPECTED = {
    "curves": ("# schema: curves v1", ("group", "ply", "field", "mean", "std", "n")),
    "survival": ("# schema: survival v1", ("group", "ply", "percent", "n_alive")),
    "loads": ("# schema: loads v1", ("class", "key_type", "key", "mean", "std", "n")),
    "tvp": ("# schema: tvp v1", ("class", "ply", "n_pieces", "mean", "std", "n")),
}


def read_rows(path: str | Path, schema: str) -> list[list[str]]:
    prefix, columns = EXPECTED[schema]
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith(prefix):
            raise SchemaError(
                f"{path}: expected `{prefix} ({','.join(columns)})`, found `{header}`"
            )
        rows = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(",")
            if len(parts) != len(columns):
                raise SchemaError(
                    f"{path}:{lineno}: expected {len(columns)} columns "
                    f"({','.join(columns)}), got {len(parts)}"
                )
            rows.append(parts)
    return rows


@dataclass
class CurvePoint:
    ply: int
    mean: float
    std: float
    n: int


def read_curves(path: str | Path, field: str) -> dict[str, list[CurvePoint]]:
    out: dict[str, list[CurvePoint]] = {}
    for group, ply, f, mean, std, n in read_rows(path, "curves"):
        if f != field:
            continue
        out.setdefault(group, []).append(CurvePoint(int(ply), float(mean), float(std), int(n)))
    for pts in out.values():
        pts.sort(key=lambda p: p.ply)
    return out


def read_survival(path: str | Path) -> dict[str, list[tuple[int, float]]]:
    out: dict[str, list[tuple[int, float]]] = {}
    for group, ply, pct, _ in read_rows(path, "survival"):
        out.setdefault(group, []).append((int(ply), float(pct)))
    for pts in out.values():
        pts.sort()
    return out


def read_loads(path: str | Path) -> list[dict]:
    return [
        {"class": c, "key_type": kt, "key": k, "mean": float(m), "std": float(s), "n": int(n)}
        for c, kt, k, m, s, n in read_rows(path, "loads")
    ]


def read_tvp(path: str | Path) -> list[dict]:
    return [
        {"class": c, "ply": int(p), "n_pieces": int(np_), "mean": float(m), "std": float(s), "n": int(n)}
        for c, p, np_, m, s, n in read_rows(path, "tvp")
    ]


def read_network(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    missing = {"fen", "edges"} - set(payload)
    if missing:
        raise SchemaError(f"{path}: network JSON missing keys {sorted(missing)}")
    for i, edge in enumerate(payload["edges"]):
        gap = {"from", "to", "weight", "kind"} - set(edge)
        if gap:
            raise SchemaError(f"{path}: edge {i} missing {sorted(gap)}")
    return payload


def parse_fen_placement(fen: str) -> dict[str, str]:
    """Square name -> piece char, from the first FEN field only."""
    placement = fen.split()[0]
    rows = placement.split("/")
    if len(rows) != 8:
        raise SchemaError(f"bad FEN placement {placement!r}")
    out: dict[str, str] = {}
    for i, row in enumerate(rows):
        rank = 8 - i
        file = 0
        for ch in row:
            if ch.isdigit():
                file += int(ch)
            else:
                out[f"{'abcdefgh'[file]}{rank}"] = ch
                file += 1
    return out
