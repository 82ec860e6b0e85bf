#!/usr/bin/env python3
"""Generate the bundled fixture corpora (deterministic, committed outputs).

A small seeded alpha-beta bot with an opening book plays both sides.  Two
styles approximate the two game populations the analytics distinguish:

* master-style (fixtures/human_gm_50.pgn): noisier root choice, sharper
  collapses, Elo headers in the 2450-2770 band;
* engine-style (fixtures/engine_ai_20.pgn): quieter root choice and a bias
  against simplification, so games run longer with more pieces on.

Usage: python scripts/make_fixtures.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from chess_tension.board import (
    BLACK,
    WHITE,
    _apply_unchecked,
    insufficient_material,
    is_check,
    legal_moves,
    repetition_key,
    startpos,
)
from chess_tension.notation import move_to_san, parse_san
from chess_tension.pgn import write_game_pgn

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"

VALUES = {1: 100, 2: 320, 3: 330, 4: 500, 5: 900, 6: 0}

# Simplified-evaluation piece-square tables, white perspective, a1 = 0.
PST = {
    1: (  # pawn
        0, 0, 0, 0, 0, 0, 0, 0,
        5, 10, 10, -20, -20, 10, 10, 5,
        5, -5, -10, 0, 0, -10, -5, 5,
        0, 0, 0, 20, 20, 0, 0, 0,
        5, 5, 10, 25, 25, 10, 5, 5,
        10, 10, 20, 30, 30, 20, 10, 10,
        50, 50, 50, 50, 50, 50, 50, 50,
        0, 0, 0, 0, 0, 0, 0, 0,
    ),
    2: (  # knight
        -50, -40, -30, -30, -30, -30, -40, -50,
        -40, -20, 0, 5, 5, 0, -20, -40,
        -30, 5, 10, 15, 15, 10, 5, -30,
        -30, 0, 15, 20, 20, 15, 0, -30,
        -30, 5, 15, 20, 20, 15, 5, -30,
        -30, 0, 10, 15, 15, 10, 0, -30,
        -40, -20, 0, 0, 0, 0, -20, -40,
        -50, -40, -30, -30, -30, -30, -40, -50,
    ),
    3: (  # bishop
        -20, -10, -10, -10, -10, -10, -10, -20,
        -10, 5, 0, 0, 0, 0, 5, -10,
        -10, 10, 10, 10, 10, 10, 10, -10,
        -10, 0, 10, 10, 10, 10, 0, -10,
        -10, 5, 5, 10, 10, 5, 5, -10,
        -10, 0, 5, 10, 10, 5, 0, -10,
        -10, 0, 0, 0, 0, 0, 0, -10,
        -20, -10, -10, -10, -10, -10, -10, -20,
    ),
    4: (  # rook
        0, 0, 0, 5, 5, 0, 0, 0,
        -5, 0, 0, 0, 0, 0, 0, -5,
        -5, 0, 0, 0, 0, 0, 0, -5,
        -5, 0, 0, 0, 0, 0, 0, -5,
        -5, 0, 0, 0, 0, 0, 0, -5,
        -5, 0, 0, 0, 0, 0, 0, -5,
        5, 10, 10, 10, 10, 10, 10, 5,
        0, 0, 0, 0, 0, 0, 0, 0,
    ),
    5: (  # queen
        -20, -10, -10, -5, -5, -10, -10, -20,
        -10, 0, 5, 0, 0, 0, 0, -10,
        -10, 5, 5, 5, 5, 5, 0, -10,
        0, 0, 5, 5, 5, 5, 0, -5,
        -5, 0, 5, 5, 5, 5, 0, -5,
        -10, 0, 5, 5, 5, 5, 0, -10,
        -10, 0, 0, 0, 0, 0, 0, -10,
        -20, -10, -10, -5, -5, -10, -10, -20,
    ),
    6: (  # king, middlegame
        20, 30, 10, 0, 0, 10, 30, 20,
        20, 20, 0, 0, 0, 0, 20, 20,
        -10, -20, -20, -20, -20, -20, -20, -10,
        -20, -30, -30, -40, -40, -30, -30, -20,
        -30, -40, -40, -50, -50, -40, -40, -30,
        -30, -40, -40, -50, -50, -40, -40, -30,
        -30, -40, -40, -50, -50, -40, -40, -30,
        -30, -40, -40, -50, -50, -40, -40, -30,
    ),
}

MATE = 100_000

OPENING_BOOK = [
    # 12 plies each: mainstream lines across openings
    "e4 e5 Nf3 Nc6 Bb5 a6 Ba4 Nf6 O-O Be7 Re1 b5",
    "e4 e5 Nf3 Nc6 Bc4 Bc5 c3 Nf6 d3 d6 O-O a6",
    "e4 c5 Nf3 d6 d4 cxd4 Nxd4 Nf6 Nc3 a6 Be2 e5",
    "e4 c5 Nf3 Nc6 d4 cxd4 Nxd4 Nf6 Nc3 e5 Ndb5 d6",
    "e4 e6 d4 d5 Nc3 Bb4 e5 c5 a3 Bxc3+ bxc3 Ne7",
    "e4 c6 d4 d5 Nc3 dxe4 Nxe4 Bf5 Ng3 Bg6 h4 h6",
    "d4 d5 c4 e6 Nc3 Nf6 Bg5 Be7 e3 O-O Nf3 h6",
    "d4 d5 c4 c6 Nf3 Nf6 Nc3 dxc4 a4 Bf5 e3 e6",
    "d4 Nf6 c4 g6 Nc3 Bg7 e4 d6 Nf3 O-O Be2 e5",
    "d4 Nf6 c4 e6 Nc3 Bb4 e3 O-O Bd3 d5 Nf3 c5",
    "c4 e5 Nc3 Nf6 Nf3 Nc6 g3 d5 cxd5 Nxd5 Bg2 Nb6",
    "Nf3 d5 g3 Nf6 Bg2 e6 O-O Be7 d3 O-O Nbd2 c5",
    "e4 e5 Nf3 Nf6 Nxe5 d6 Nf3 Nxe4 d4 d5 Bd3 Nc6",
    "d4 f5 g3 Nf6 Bg2 e6 Nf3 Be7 O-O O-O c4 d6",
    "e4 d6 d4 Nf6 Nc3 g6 Be2 Bg7 Nf3 O-O O-O c6",
    "e4 g6 d4 Bg7 Nc3 d6 f4 Nf6 Nf3 O-O Bd3 Na6",
    "d4 Nf6 Nf3 e6 c4 b6 g3 Ba6 b3 Bb4+ Bd2 Be7",
    "d4 Nf6 c4 c5 d5 b5 cxb5 a6 bxa6 g6 Nc3 Bxa6",
    "e4 e5 Nf3 Nc6 d4 exd4 Nxd4 Nf6 Nc3 Bb4 Nxc6 bxc6",
    "c4 c5 Nf3 Nf6 d4 cxd4 Nxd4 e6 g3 Qc7 Bg2 a6",
    "e4 e5 Bc4 Nf6 d3 c6 Nf3 d5 Bb3 Bd6 Nc3 dxe4",
    "d4 e6 c4 f5 g3 Nf6 Bg2 Be7 Nf3 O-O O-O d6",
    "e4 c5 c3 d5 exd5 Qxd5 d4 Nf6 Nf3 Bg4 Be2 e6",
    "Nf3 Nf6 c4 b6 g3 Bb7 Bg2 e6 O-O Be7 Nc3 O-O",
]


def static_eval(board, stm: int, trade_bias: int) -> int:
    """Centipawns from stm's perspective."""
    score = 0
    total = 0
    for sq, code in enumerate(board):
        if not code:
            continue
        kind = code if code > 0 else -code
        v = VALUES[kind]
        total += v
        v += PST[kind][sq if code > 0 else sq ^ 56]
        score += v if code > 0 else -v
    score = score if stm == WHITE else -score
    # trade_bias > 0 rewards keeping material on the board (engine style)
    score += trade_bias * total // 8000
    return score


class Bot:
    def __init__(self, depth: int, noise: int, trade_bias: int, rng: random.Random):
        self.depth = depth
        self.noise = noise
        self.trade_bias = trade_bias
        self.rng = rng

    def _quiesce(self, pos, alpha: int, beta: int, qdepth: int) -> int:
        stand = static_eval(pos.board, pos.side_to_move, self.trade_bias)
        if stand >= beta or qdepth == 0:
            return stand
        alpha = max(alpha, stand)
        caps = [m for m in legal_moves(pos) if m.is_capture]
        caps.sort(key=lambda m: -abs(pos.board[m.to_sq]))
        for m in caps:
            score = -self._quiesce(_apply_unchecked(pos, m), -beta, -alpha, qdepth - 1)
            if score >= beta:
                return score
            alpha = max(alpha, score)
        return alpha

    def _search(self, pos, depth: int, alpha: int, beta: int) -> int:
        moves = legal_moves(pos)
        if not moves:
            return -MATE + (self.depth - depth) if is_check(pos) else 0
        if pos.halfmove_clock >= 100 or insufficient_material(pos):
            return 0
        if depth == 0:
            return self._quiesce(pos, alpha, beta, 4)
        moves.sort(key=lambda m: 0 if not m.is_capture else -abs(pos.board[m.to_sq]))
        best = -MATE * 2
        for m in moves:
            score = -self._search(_apply_unchecked(pos, m), depth - 1, -beta, -alpha)
            if score > best:
                best = score
            alpha = max(alpha, score)
            if alpha >= beta:
                break
        return best

    def pick(self, pos):
        """Best root move with seeded root noise."""
        moves = legal_moves(pos)
        moves.sort(key=lambda m: 0 if not m.is_capture else -abs(pos.board[m.to_sq]))
        best, best_score = None, None
        for m in moves:
            score = -self._search(_apply_unchecked(pos, m), self.depth - 1, -MATE * 2, MATE * 2)
            score += self.rng.randint(-self.noise, self.noise)
            if best_score is None or score > best_score:
                best, best_score = m, score
        return best


def play_game(white: Bot, black: Bot, opening: str, ply_cap: int):
    pos = startpos()
    sans = []
    for san in opening.split():
        m = parse_san(pos, san)
        sans.append(san)
        pos = _apply_unchecked(pos, m)
    seen = {repetition_key(pos): 1}
    result, termination = "*", "ply-cap"
    while len(sans) < ply_cap:
        moves = legal_moves(pos)
        if not moves:
            if is_check(pos):
                result = "0-1" if pos.side_to_move == WHITE else "1-0"
                termination = "checkmate"
            else:
                result, termination = "1/2-1/2", "stalemate"
            break
        if pos.halfmove_clock >= 100:
            result, termination = "1/2-1/2", "fifty-move"
            break
        if insufficient_material(pos):
            result, termination = "1/2-1/2", "insufficient-material"
            break
        bot = white if pos.side_to_move == WHITE else black
        m = bot.pick(pos)
        sans.append(move_to_san(pos, m))
        pos = _apply_unchecked(pos, m)
        key = repetition_key(pos)
        seen[key] = seen.get(key, 0) + 1
        if seen[key] >= 3:
            result, termination = "1/2-1/2", "threefold"
            break
    if result == "*":  # adjudicate capped games as draws for fixture purposes
        result, termination = "1/2-1/2", "ply-cap"
    return sans, result, termination


def one_game(task: tuple[str, int, int, int]) -> str:
    """Deterministic per-game worker (seed stream independent of scheduling)."""
    kind, seed, i, ply_cap = task
    grng = random.Random(f"{kind}:{seed}:{i}")
    opening = OPENING_BOOK[i % len(OPENING_BOOK)]
    if kind == "human":
        noise, bias = 35, 0
        elo_w, elo_b = grng.randint(2450, 2770), grng.randint(2450, 2770)
        event = "Fixture Masters"
    else:
        noise, bias = 8, 60
        elo_w, elo_b = grng.randint(3380, 3520), grng.randint(3380, 3520)
        event = "Fixture Engine League"
    white = Bot(2, noise, bias, random.Random(grng.getrandbits(64)))
    black = Bot(2, noise, bias, random.Random(grng.getrandbits(64)))
    sans, result, termination = play_game(white, black, opening, ply_cap)
    headers = {
        "Event": event,
        "Site": "fixture",
        "Date": "2026.01.01",
        "Round": str(i + 1),
        "White": f"{kind}-bot-{2 * i}",
        "Black": f"{kind}-bot-{2 * i + 1}",
        "Result": result,
        "WhiteElo": str(elo_w),
        "BlackElo": str(elo_b),
        "Termination": termination,
    }
    print(f"  {kind} game {i + 1}: {len(sans)} plies, {result} ({termination})", file=sys.stderr)
    return write_game_pgn(headers, sans, result)


def build_corpus(kind: str, n_games: int, seed: int, ply_cap: int, workers: int) -> str:
    t0 = time.time()
    tasks = [(kind, seed, i, ply_cap) for i in range(n_games)]
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            chunks = list(pool.imap(one_game, tasks))
    else:
        chunks = [one_game(t) for t in tasks]
    print(f"{kind}: {time.time() - t0:.0f}s", file=sys.stderr)
    return "\n".join(chunks)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="tiny corpora for a dry run")
    ap.add_argument("--workers", type=int, default=8)
    args = ap.parse_args()
    FIXTURES.mkdir(exist_ok=True)
    n_human, n_ai = (6, 3) if args.quick else (50, 20)
    human = build_corpus("human", n_human, seed=1108, ply_cap=180, workers=args.workers)
    (FIXTURES / "human_gm_50.pgn").write_text(human, encoding="utf-8")
    ai = build_corpus("ai", n_ai, seed=2206, ply_cap=240, workers=args.workers)
    (FIXTURES / "engine_ai_20.pgn").write_text(ai, encoding="utf-8")


if __name__ == "__main__":
    main()
