"""SAN and UCI move text codecs.

SAN parsing is tolerant of the annotation suffixes found in real archives
(+, #, !, ?, e.p.) and of a missing capture marker; writing always produces
minimal-disambiguation SAN with check/mate suffixes.
"""

from __future__ import annotations

import re
from typing import Optional

from .board import (
    CHAR_KINDS,
    FILE_NAMES,
    KIND_CHARS,
    PAWN,
    Move,
    Position,
    ChessError,
    _apply_unchecked,
    is_check,
    legal_moves,
    parse_square,
    square_file,
    square_name,
    square_rank,
)


class SanError(ChessError):
    """SAN text that is malformed, illegal, or ambiguous in the position."""


_SAN_RE = re.compile(
    r"^(?P<piece>[KQRBN])?(?P<dis_file>[a-h])?(?P<dis_rank>[1-8])?"
    r"(?P<capture>x)?(?P<target>[a-h][1-8])(?:=?(?P<promo>[QRBN]))?$"
)
_SUFFIX_RE = re.compile(r"(?:\s*e\.p\.)?[+#!?]*$")


def move_to_uci(m: Move) -> str:
    return m.uci()


def parse_uci(pos: Position, text: str) -> Move:
    """Resolve UCI long algebraic text ("e2e4", "e7e8q") to a legal move."""
    text = text.strip()
    if not 4 <= len(text) <= 5:
        raise SanError(f"bad UCI move {text!r}")
    try:
        from_sq = parse_square(text[:2])
        to_sq = parse_square(text[2:4])
    except ValueError as exc:
        raise SanError(f"bad UCI move {text!r}") from exc
    promo: Optional[int] = None
    if len(text) == 5:
        promo = CHAR_KINDS.get(text[4].lower())
        if promo is None:
            raise SanError(f"bad promotion in {text!r}")
    for m in legal_moves(pos):
        if m.from_sq == from_sq and m.to_sq == to_sq and m.promotion == promo:
            return m
    raise SanError(f"{text!r} is not legal in {pos.fen()}")


def parse_san(pos: Position, text: str) -> Move:
    """Resolve a SAN token against the position's legal moves."""
    raw = text.strip()
    token = _SUFFIX_RE.sub("", raw)
    moves = legal_moves(pos)

    if token in ("O-O", "0-0"):
        cands = [m for m in moves if m.is_castle and square_file(m.to_sq) == 6]
    elif token in ("O-O-O", "0-0-0"):
        cands = [m for m in moves if m.is_castle and square_file(m.to_sq) == 2]
    else:
        match = _SAN_RE.match(token)
        if not match:
            raise SanError(f"unparsable SAN {raw!r}")
        kind = CHAR_KINDS[match["piece"].lower()] if match["piece"] else PAWN
        target = parse_square(match["target"])
        promo = CHAR_KINDS[match["promo"].lower()] if match["promo"] else None
        dis_file = FILE_NAMES.index(match["dis_file"]) if match["dis_file"] else None
        dis_rank = int(match["dis_rank"]) - 1 if match["dis_rank"] is not None else None
        cands = []
        for m in moves:
            if m.is_castle or m.to_sq != target or m.promotion != promo:
                continue
            if abs(pos.board[m.from_sq]) != kind:
                continue
            if dis_file is not None and square_file(m.from_sq) != dis_file:
                continue
            if dis_rank is not None and square_rank(m.from_sq) != dis_rank:
                continue
            # Pawn captures must state the source file ("exd5", not "xd5").
            if kind == PAWN and m.is_capture and dis_file is None:
                continue
            if kind == PAWN and not m.is_capture and dis_file is not None:
                continue
            cands.append(m)
    if not cands:
        raise SanError(f"{raw!r} is not legal in {pos.fen()}")
    if len(cands) > 1:
        raise SanError(f"{raw!r} is ambiguous in {pos.fen()}: {[m.uci() for m in cands]}")
    return cands[0]


def move_to_san(pos: Position, m: Move) -> str:
    """Render a legal move as minimally disambiguated SAN with +/# suffix."""
    if m.is_castle:
        base = "O-O" if square_file(m.to_sq) == 6 else "O-O-O"
    else:
        kind = abs(pos.board[m.from_sq])
        if kind == PAWN:
            base = ""
            if m.is_capture:
                base += FILE_NAMES[square_file(m.from_sq)] + "x"
            base += square_name(m.to_sq)
            if m.promotion:
                base += "=" + KIND_CHARS[m.promotion].upper()
        else:
            base = KIND_CHARS[kind].upper()
            rivals = [
                o
                for o in legal_moves(pos)
                if o.to_sq == m.to_sq
                and o.from_sq != m.from_sq
                and abs(pos.board[o.from_sq]) == kind
            ]
            if rivals:
                same_file = any(square_file(o.from_sq) == square_file(m.from_sq) for o in rivals)
                same_rank = any(square_rank(o.from_sq) == square_rank(m.from_sq) for o in rivals)
                if not same_file:
                    base += FILE_NAMES[square_file(m.from_sq)]
                elif not same_rank:
                    base += str(square_rank(m.from_sq) + 1)
                else:
                    base += square_name(m.from_sq)
            if m.is_capture:
                base += "x"
            base += square_name(m.to_sq)
    after = _apply_unchecked(pos, m)
    if is_check(after):
        base += "#" if not legal_moves(after) else "+"
    return base
