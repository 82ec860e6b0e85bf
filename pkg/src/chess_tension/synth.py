"""Synthetic game generation by greedy per-ply tension maximization.

At every ply the tension of each legal successor position is computed and
one of the maximizers is chosen uniformly at random (seeded).  Candidates
are index-ordered by the deterministic move ordering, so a run is fully
reproducible from its seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .board import (
    Move,
    Position,
    _apply_unchecked,
    is_check,
    legal_moves,
    startpos,
)
from .metrics import spectral_radius
from .notation import move_to_san, parse_san
from .tension import build_tension_network

# Floating-point slack when collecting the argmax set; equal-tension siblings
# produced by different matrices may differ by solver rounding.
TIE_EPS = 1e-9


@dataclass(frozen=True)
class SynthConfig:
    max_plies: int = 150
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_plies < 1:
            raise ValueError("max_plies must be >= 1")


@dataclass
class PlyTrace:
    ply: int
    move_uci: str
    move_san: str
    tension: float
    argmax_size: int
    n_candidates: int


@dataclass
class SynthResult:
    moves: list[Move]
    sans: list[str]
    trace: list[PlyTrace]
    final: Position
    termination: str  # "checkmate" | "stalemate" | "ply-cap"

    @property
    def result_token(self) -> str:
        if self.termination == "checkmate":
            return "0-1" if self.final.side_to_move == 1 else "1-0"
        if self.termination == "stalemate":
            return "1/2-1/2"
        return "*"


def successor_tensions(pos: Position) -> list[tuple[Move, float]]:
    """(move, tension-after-move) for every legal move, in move order."""
    out = []
    for m in legal_moves(pos):
        after = _apply_unchecked(pos, m)
        out.append((m, spectral_radius(build_tension_network(after).adjacency)))
    return out


def max_tension_game(cfg: SynthConfig) -> SynthResult:
    """Play out a game choosing uniformly among tension-maximizing moves."""
    rng = random.Random(cfg.rng_seed)
    pos = startpos()
    moves: list[Move] = []
    sans: list[str] = []
    trace: list[PlyTrace] = []
    termination = "ply-cap"
    for ply in range(1, cfg.max_plies + 1):
        scored = successor_tensions(pos)
        if not scored:
            termination = "checkmate" if is_check(pos) else "stalemate"
            break
        best = max(t for _, t in scored)
        argmax = [(m, t) for m, t in scored if t >= best - TIE_EPS]
        m, t = argmax[rng.randrange(len(argmax))]
        san = move_to_san(pos, m)
        trace.append(PlyTrace(ply, m.uci(), san, t, len(argmax), len(scored)))
        moves.append(m)
        sans.append(san)
        pos = _apply_unchecked(pos, m)
    return SynthResult(moves, sans, trace, pos, termination)


# Reference greedy-maximization game (30 numbered moves = 60 plies).
MAX_TENSION_FIXTURE_SANS = (
    "d3 h6 Bg5 e5 Be7 Nc6 Qd2 d5 Qxh6 Qd6 Qe6 Nd8 "
    "c4 Rh6 cxd5 e4 Nc3 g5 Na4 b5 Rc1 Rb8 Rxc7 Rb7 Nc5 Qxd5 dxe4 Rb6 e3 Ra6 Rxa7 b4 "
    "Bd3 Bg7 Nf3 Bf8 Nxg5 Bd7 f4 Bc8 Kf2 b3 Rc1 bxa2 Rc3 a1=Q Ra3 Qd1 Ra4 Qg4 "
    "Be2 Qgf5 Bd3 Qfxe4 Ra8 Nxe7 Kg3 Rh4 Kf2 Rh6"
).split()


@dataclass
class FixtureReplay:
    fens: list[str]
    tensions: list[float]  # tensions[k] is the tension after ply k+1


def replay_fixture(sans: Optional[list[str]] = None) -> FixtureReplay:
    """Replay the bundled maximized-tension move list, emitting per-ply tension.

    Raises if any move is illegal: that signals a rules bug, not bad data.
    """
    pos = startpos()
    fens = []
    tensions = []
    for san in sans if sans is not None else MAX_TENSION_FIXTURE_SANS:
        pos = _apply_unchecked(pos, parse_san(pos, san))
        fens.append(pos.fen())
        tensions.append(spectral_radius(build_tension_network(pos).adjacency))
    return FixtureReplay(fens, tensions)
