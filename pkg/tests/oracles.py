"""Independent brute-force oracles used to cross-check the production paths.

Everything here derives values literally from first principles through the
public API, trading speed for obviousness: link sets come from full legal
move enumeration plus one-move lookahead, the spectral radius from the exact
characteristic polynomial, perft from published tables.
"""

from __future__ import annotations

from dataclasses import replace

import sympy

from chess_tension.board import (
    BLACK,
    KING,
    QUEEN,
    WHITE,
    Move,
    Position,
    apply_move,
    attacks_square,
    legal_moves,
    square,
    square_file,
    square_rank,
)

# Published perft node counts (start position and five standard test
# positions from the chess programming literature).
PERFT_TABLE = [
    ("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1", [20, 400, 8902, 197281]),
    ("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", [48, 2039, 97862]),
    ("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", [14, 191, 2812, 43238]),
    ("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1", [6, 264, 9467]),
    ("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8", [44, 1486, 62379]),
    ("r4rk1/1pp1qppp/p1np1n2/2b1p1B1/2B1P1b1/P1NP1N2/1PP1QPPP/R4RK1 w - - 0 10", [46, 2079, 89890]),
]


def restamp(pos: Position, color: int) -> Position:
    """Re-stamp the side to move, keeping EP rights only for their owner."""
    ep = pos.en_passant if color == pos.side_to_move else None
    return replace(pos, side_to_move=color, en_passant=ep)


def victim_square(m: Move) -> int:
    if m.is_en_passant:
        return square(square_file(m.to_sq), square_rank(m.from_sq))
    return m.to_sq


def oracle_capture_moves(pos: Position, color: int) -> list[Move]:
    return [m for m in legal_moves(restamp(pos, color)) if m.is_capture]


def _pinned_by_removal(pos: Position, sq: int, color: int) -> bool:
    """Absolute pin, derived by removing the piece and re-scanning sliders."""
    board = list(pos.board)
    board[sq] = 0
    stripped = replace(pos, board=tuple(board))
    king_sq = pos.king_square(color)
    for s, code in enumerate(stripped.board):
        if not code or (code > 0) == (color > 0) or abs(code) in (1, 2, 6):  # pawns/knights/kings never pin
            continue
        if attacks_square(stripped, s, king_sq) and _strictly_between(s, king_sq, sq):
            return True
    return False


def _strictly_between(a: int, b: int, x: int) -> bool:
    fa, ra, fb, rb = a & 7, a >> 3, b & 7, b >> 3
    df, dr = fb - fa, rb - ra
    if df and dr and abs(df) != abs(dr):
        return False
    steps = max(abs(df), abs(dr))
    sf = (df > 0) - (df < 0)
    sr = (dr > 0) - (dr < 0)
    return any((ra + i * sr) * 8 + (fa + i * sf) == x for i in range(1, steps))


def oracle_attack_links(pos: Position) -> set[tuple[int, int]]:
    links = set()
    for color in (WHITE, BLACK):
        for m in oracle_capture_moves(pos, color):
            links.add((m.from_sq, victim_square(m)))
        king_sq = pos.king_square(-color)
        for sq, code in enumerate(pos.board):
            if not code or (code > 0) != (color > 0) or abs(code) == KING:
                continue
            if attacks_square(pos, sq, king_sq) and not _pinned_by_removal(pos, sq, color):
                links.add((sq, king_sq))
    return links


def oracle_defense_links(pos: Position) -> set[tuple[int, int]]:
    links = set()
    for att_color in (WHITE, BLACK):
        base = restamp(pos, att_color)
        for m in oracle_capture_moves(pos, att_color):
            if m.promotion not in (None, QUEEN):
                continue
            vic = victim_square(m)
            after = apply_move(base, m)
            for m2 in legal_moves(after):
                if m2.is_capture and m2.to_sq == m.to_sq:
                    links.add((m2.from_sq, vic))
    return links


def oracle_control_links(pos: Position) -> set[tuple[int, int]]:
    links = set()
    for mv_color in (WHITE, BLACK):
        base = restamp(pos, mv_color)
        for m in legal_moves(base):
            if m.is_capture or m.is_castle or m.promotion not in (None, QUEEN):
                continue
            after = apply_move(base, m)
            for m2 in legal_moves(after):
                if m2.is_capture and m2.to_sq == m.to_sq:
                    links.add((m2.from_sq, m.to_sq))
    return links


def charpoly_spectral_radius(matrix) -> float:
    """Largest eigenvalue via the exact characteristic polynomial."""
    m = sympy.Matrix([[int(v) for v in row] for row in matrix])
    poly = m.charpoly()
    roots = sympy.Poly(poly.as_expr(), poly.gens[0]).real_roots()
    return float(max(roots).evalf(25))
