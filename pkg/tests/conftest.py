import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # oracles, toy engine helpers

from chess_tension.board import (
    KING,
    Position,
    _apply_unchecked,
    legal_moves,
    parse_fen,
    serialize_fen,
    startpos,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


def random_playout(rng: random.Random, plies: int) -> Position:
    """Position reached by uniformly random legal moves from the start."""
    pos = startpos()
    for _ in range(plies):
        moves = legal_moves(pos)
        if not moves:
            break
        pos = _apply_unchecked(pos, rng.choice(moves))
    return pos


def random_sparse_position(rng: random.Random, max_pieces: int = 10) -> Position:
    """Sparse position: random playout, then piece deletion with king repair.

    Keeps 2..max_pieces pieces (kings always), random side to move, no EP or
    castling rights; re-rolls until strictly legal.
    """
    while True:
        pos = random_playout(rng, rng.randrange(10, 60))
        board = list(pos.board)
        occupied = [sq for sq, code in enumerate(board) if code and abs(code) != KING]
        rng.shuffle(occupied)
        target = rng.randrange(0, max_pieces - 1)
        for sq in occupied[target:]:
            board[sq] = 0
        cand = Position(
            board=tuple(board),
            side_to_move=rng.choice((1, -1)),
            castling=0,
            en_passant=None,
            halfmove_clock=0,
            fullmove_number=1,
        )
        try:
            # strict parse re-rolls anything illegal (e.g. idle side in check)
            return parse_fen(serialize_fen(cand))
        except Exception:
            continue


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
