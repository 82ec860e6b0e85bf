"""Per-ply scalar metrics of an interaction network.

Tension is the spectral radius (largest eigenvalue) of the 64x64 symmetric
adjacency matrix.  Companion statistics: piece count, weighted material,
link counts by kind, attack-defense balance, cyclomatic loop count, degree
statistics over piece nodes, tension per piece, and log-tension entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .board import BISHOP, KING, KNIGHT, PAWN, QUEEN, ROOK, Position
from .tension import LinkKind, TensionGraph

PIECE_VALUES = {PAWN: 1, KNIGHT: 3, BISHOP: 3, ROOK: 5, QUEEN: 9, KING: 0}


class ContractViolation(ValueError):
    """Adjacency input outside the symmetric non-negative contract."""


def spectral_radius(adjacency) -> float:
    """Largest eigenvalue of a symmetric non-negative matrix, to 1e-9.

    Deterministic dense symmetric solve; raises ContractViolation on
    asymmetric or negative input.
    """
    mat = np.asarray(adjacency, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ContractViolation(f"expected a square matrix, got shape {mat.shape}")
    if not np.array_equal(mat, mat.T):
        raise ContractViolation("matrix is not symmetric")
    if (mat < 0).any():
        raise ContractViolation("matrix has negative entries")
    if not mat.any():
        return 0.0
    return float(np.linalg.eigvalsh(mat)[-1])


def loop_count(graph: TensionGraph) -> int:
    """Cyclomatic number E - V + C of the simple graph (weights ignored)."""
    pairs = {(e.a, e.b) for e in graph.edges}
    return _cyclomatic(pairs)


def _cyclomatic(pairs: set[tuple[int, int]]) -> int:
    nodes: dict[int, list[int]] = {}
    for a, b in pairs:
        nodes.setdefault(a, []).append(b)
        nodes.setdefault(b, []).append(a)
    seen: set[int] = set()
    components = 0
    for start in nodes:
        if start in seen:
            continue
        components += 1
        stack = [start]
        seen.add(start)
        while stack:
            for nb in nodes[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return len(pairs) - len(nodes) + components


def strength_bounds(graph: TensionGraph) -> tuple[float, float]:
    """(mean strength over non-isolated nodes, max strength over all nodes).

    The spectral radius always lies between these two values.
    """
    adj = graph.adjacency
    strengths = adj.sum(axis=1)
    active = strengths[strengths > 0]
    if active.size == 0:
        return 0.0, 0.0
    return float(active.mean()), float(strengths.max())


@dataclass(frozen=True)
class PlyMetrics:
    """One CSV row of per-ply statistics; column order is CSV_COLUMNS."""

    ply: int
    tension: float
    n_pieces: int
    material: int
    n_links_attack: int
    n_links_defense: int
    n_links_control: int
    adb_weighted: int
    adb_count: int
    n_loops: int
    deg_mean: float
    deg_std: float
    noise_coeff: float
    tension_per_piece: float
    entropy: float  # log(tension); NaN when tension == 0

    @property
    def adb(self) -> int:
        return self.adb_weighted


CSV_COLUMNS = tuple(f.name for f in fields(PlyMetrics))


def compute_ply_metrics(
    graph: TensionGraph,
    pos: Position,
    ply: int,
    *,
    weighted_degrees: bool = True,
) -> PlyMetrics:
    """All per-ply statistics for one position and its interaction network.

    Degree statistics run over the on-board piece nodes, isolated ones
    included; `weighted_degrees=False` switches strengths to plain degrees.
    """
    adj = graph.adjacency
    tension = spectral_radius(adj)

    piece_squares = [sq for sq, code in enumerate(pos.board) if code]
    n_pieces = len(piece_squares)
    material = sum(PIECE_VALUES[abs(code)] for code in pos.board if code)

    n_att = graph.edge_count(LinkKind.ATTACK)
    n_def = graph.edge_count(LinkKind.DEFENSE)
    n_ctl = graph.edge_count(LinkKind.CONTROL)
    adb_weighted = graph.weight_sum(LinkKind.ATTACK) - graph.weight_sum(LinkKind.DEFENSE)
    adb_count = n_att - n_def

    if weighted_degrees:
        degs = adj.sum(axis=1)[piece_squares]
    else:
        degs = (adj > 0).sum(axis=1)[piece_squares]
    deg_mean = float(degs.mean()) if n_pieces else 0.0
    deg_std = float(degs.std()) if n_pieces else 0.0
    noise = deg_std / deg_mean if deg_mean > 0 else 0.0

    return PlyMetrics(
        ply=ply,
        tension=tension,
        n_pieces=n_pieces,
        material=material,
        n_links_attack=n_att,
        n_links_defense=n_def,
        n_links_control=n_ctl,
        adb_weighted=adb_weighted,
        adb_count=adb_count,
        n_loops=loop_count(graph),
        deg_mean=deg_mean,
        deg_std=deg_std,
        noise_coeff=noise,
        tension_per_piece=tension / n_pieces,
        entropy=math.log(tension) if tension > 0 else math.nan,
    )


def metrics_to_row(m: PlyMetrics) -> list[str]:
    out = []
    for name in CSV_COLUMNS:
        v = getattr(m, name)
        out.append(repr(v) if isinstance(v, float) else str(v))
    return out


def metrics_from_row(row: list[str]) -> PlyMetrics:
    kwargs = {}
    for name, text, f in zip(CSV_COLUMNS, row, fields(PlyMetrics)):
        kwargs[name] = int(text) if f.type == "int" else float(text)
    return PlyMetrics(**kwargs)
