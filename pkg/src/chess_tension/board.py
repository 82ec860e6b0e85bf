"""Chess rules core: immutable positions, FIDE-legal move generation, FEN I/O.

Squares are integers 0..63 with a1 = 0, b1 = 1, ..., h8 = 63 (file-major
within each rank).  Piece codes are signed integers: positive for White,
negative for Black, magnitude one of PAWN..KING.  Positions and moves are
frozen values; every operation is pure, so they are safe to share across
threads and to use as dict keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

WHITE = 1
BLACK = -1

PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6
PROMO_KINDS = (KNIGHT, BISHOP, ROOK, QUEEN)

# Castling-rights bits.
CASTLE_WK, CASTLE_WQ, CASTLE_BK, CASTLE_BQ = 1, 2, 4, 8

KIND_CHARS = {PAWN: "p", KNIGHT: "n", BISHOP: "b", ROOK: "r", QUEEN: "q", KING: "k"}
CHAR_KINDS = {c: k for k, c in KIND_CHARS.items()}

FILE_NAMES = "abcdefgh"

START_FEN = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"


class ChessError(Exception):
    """Base class for rule and codec errors."""


class FenError(ChessError):
    """Malformed FEN; ``field`` names the offending FEN field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class IllegalMoveError(ChessError):
    """Move not legal in the given position."""

    def __init__(self, move: "Move", fen: str):
        super().__init__(f"illegal move {move.uci()} in {fen}")
        self.move = move
        self.fen = fen


def square(file: int, rank: int) -> int:
    return rank * 8 + file


def square_file(sq: int) -> int:
    return sq & 7


def square_rank(sq: int) -> int:
    return sq >> 3


def square_name(sq: int) -> str:
    return FILE_NAMES[sq & 7] + str((sq >> 3) + 1)


def parse_square(name: str) -> int:
    if len(name) != 2 or name[0] not in FILE_NAMES or name[1] not in "12345678":
        raise ValueError(f"bad square name {name!r}")
    return (int(name[1]) - 1) * 8 + FILE_NAMES.index(name[0])


class Piece(NamedTuple):
    color: int  # WHITE or BLACK
    kind: int  # PAWN..KING

    @property
    def code(self) -> int:
        return self.color * self.kind

    def char(self) -> str:
        c = KIND_CHARS[self.kind]
        return c.upper() if self.color == WHITE else c

    @classmethod
    def from_code(cls, code: int) -> "Piece":
        return cls(WHITE if code > 0 else BLACK, abs(code))


# ---------------------------------------------------------------------------
# Precomputed geometry tables


def _build_step_table(offsets: tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], ...]:
    table = []
    for sq in range(64):
        f, r = sq & 7, sq >> 3
        targets = []
        for df, dr in offsets:
            nf, nr = f + df, r + dr
            if 0 <= nf < 8 and 0 <= nr < 8:
                targets.append(nr * 8 + nf)
        table.append(tuple(targets))
    return tuple(table)


def _build_rays(dirs: tuple[tuple[int, int], ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    table = []
    for sq in range(64):
        f, r = sq & 7, sq >> 3
        rays = []
        for df, dr in dirs:
            ray = []
            nf, nr = f + df, r + dr
            while 0 <= nf < 8 and 0 <= nr < 8:
                ray.append(nr * 8 + nf)
                nf += df
                nr += dr
            rays.append(tuple(ray))
        table.append(tuple(rays))
    return tuple(table)


KNIGHT_ATTACKS = _build_step_table(
    ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2))
)
KING_ATTACKS = _build_step_table(((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)))
ROOK_RAYS = _build_rays(((1, 0), (-1, 0), (0, 1), (0, -1)))
BISHOP_RAYS = _build_rays(((1, 1), (1, -1), (-1, 1), (-1, -1)))

# PAWN_ATTACKS[color][sq]: squares a pawn of `color` standing on sq attacks.
# PAWN_ATTACKERS[color][sq]: squares from which a pawn of `color` attacks sq.
PAWN_ATTACKS = {
    WHITE: _build_step_table(((-1, 1), (1, 1))),
    BLACK: _build_step_table(((-1, -1), (1, -1))),
}
PAWN_ATTACKERS = {
    WHITE: _build_step_table(((-1, -1), (1, -1))),
    BLACK: _build_step_table(((-1, 1), (1, 1))),
}


# ---------------------------------------------------------------------------
# Moves and positions


@dataclass(frozen=True)
class Move:
    """A move in coordinate form with rule flags.

    ``promotion`` is a piece kind (KNIGHT..QUEEN) or None.  ``is_en_passant``
    implies ``is_capture``; castling is encoded as the king's two-square move.
    """

    from_sq: int
    to_sq: int
    promotion: Optional[int] = None
    is_capture: bool = False
    is_en_passant: bool = False
    is_castle: bool = False
    is_double_push: bool = False

    def uci(self) -> str:
        text = square_name(self.from_sq) + square_name(self.to_sq)
        if self.promotion:
            text += KIND_CHARS[self.promotion]
        return text

    def sort_key(self) -> tuple[int, int, int]:
        return (self.from_sq, self.to_sq, self.promotion or 0)

    def __repr__(self) -> str:  # compact in test output
        return f"Move({self.uci()})"


@dataclass(frozen=True)
class Position:
    """Full game state.  ``board`` maps square index -> signed piece code."""

    board: tuple[int, ...]
    side_to_move: int
    castling: int
    en_passant: Optional[int]
    halfmove_clock: int
    fullmove_number: int

    def piece_at(self, sq: int) -> Optional[Piece]:
        code = self.board[sq]
        return Piece.from_code(code) if code else None

    def king_square(self, color: int) -> int:
        return self.board.index(color * KING)

    def fen(self) -> str:
        return serialize_fen(self)

    def __repr__(self) -> str:
        return f"Position({self.fen()!r})"


# ---------------------------------------------------------------------------
# Attack primitives (raw board lists; shared with the interaction-network code)


def _attacked_by(board, sq: int, color: int) -> bool:
    """True iff any piece of `color` geometrically attacks sq."""
    kn = color * KNIGHT
    for s in KNIGHT_ATTACKS[sq]:
        if board[s] == kn:
            return True
    kg = color * KING
    for s in KING_ATTACKS[sq]:
        if board[s] == kg:
            return True
    pw = color * PAWN
    for s in PAWN_ATTACKERS[color][sq]:
        if board[s] == pw:
            return True
    rk, qn = color * ROOK, color * QUEEN
    for ray in ROOK_RAYS[sq]:
        for s in ray:
            code = board[s]
            if code:
                if code == rk or code == qn:
                    return True
                break
    bp = color * BISHOP
    for ray in BISHOP_RAYS[sq]:
        for s in ray:
            code = board[s]
            if code:
                if code == bp or code == qn:
                    return True
                break
    return False


def _attackers_of(board, sq: int, color: int) -> list[int]:
    """Squares of all pieces of `color` that geometrically attack sq."""
    out = []
    kn = color * KNIGHT
    for s in KNIGHT_ATTACKS[sq]:
        if board[s] == kn:
            out.append(s)
    kg = color * KING
    for s in KING_ATTACKS[sq]:
        if board[s] == kg:
            out.append(s)
    pw = color * PAWN
    for s in PAWN_ATTACKERS[color][sq]:
        if board[s] == pw:
            out.append(s)
    rk, qn = color * ROOK, color * QUEEN
    for ray in ROOK_RAYS[sq]:
        for s in ray:
            code = board[s]
            if code:
                if code == rk or code == qn:
                    out.append(s)
                break
    bp = color * BISHOP
    for ray in BISHOP_RAYS[sq]:
        for s in ray:
            code = board[s]
            if code:
                if code == bp or code == qn:
                    out.append(s)
                break
    return out


def attacks_square(pos: Position, from_sq: int, target: int) -> bool:
    """Whether the piece on from_sq reaches target with its capture pattern.

    Pure geometry on the current occupancy: sliders stop at the first
    blocker, pawns attack diagonally only.  The occupant of target (if any)
    is irrelevant.
    """
    code = pos.board[from_sq]
    if not code:
        raise ChessError(f"no piece on {square_name(from_sq)}")
    if from_sq == target:
        return False
    kind = abs(code)
    if kind == KNIGHT:
        return target in KNIGHT_ATTACKS[from_sq]
    if kind == KING:
        return target in KING_ATTACKS[from_sq]
    if kind == PAWN:
        return target in PAWN_ATTACKS[WHITE if code > 0 else BLACK][from_sq]
    rays = ()
    if kind == ROOK:
        rays = ROOK_RAYS[from_sq]
    elif kind == BISHOP:
        rays = BISHOP_RAYS[from_sq]
    else:  # queen
        rays = ROOK_RAYS[from_sq] + BISHOP_RAYS[from_sq]
    board = pos.board
    for ray in rays:
        for s in ray:
            if s == target:
                return True
            if board[s]:
                break
    return False


# ---------------------------------------------------------------------------
# Move generation

# Move mechanics on a mutable board list.  Returns an undo list of
# (square, previous code) pairs.  `victim_sq` differs from to_sq only for
# en-passant captures.


def _make_raw(board, m: Move, code: int):
    undo = [(m.from_sq, code), (m.to_sq, board[m.to_sq])]
    board[m.from_sq] = 0
    board[m.to_sq] = (code // abs(code)) * m.promotion if m.promotion else code
    if m.is_en_passant:
        vic = square(square_file(m.to_sq), square_rank(m.from_sq))
        undo.append((vic, board[vic]))
        board[vic] = 0
    elif m.is_castle:
        rank = square_rank(m.from_sq)
        if square_file(m.to_sq) == 6:  # kingside
            r_from, r_to = square(7, rank), square(5, rank)
        else:
            r_from, r_to = square(0, rank), square(3, rank)
        undo.append((r_from, board[r_from]))
        undo.append((r_to, board[r_to]))
        board[r_to] = board[r_from]
        board[r_from] = 0
    return undo


def _unmake_raw(board, undo) -> None:
    for sq, code in undo:
        board[sq] = code


def _pseudo_moves(
    board,
    color: int,
    ep: Optional[int],
    *,
    captures: bool = True,
    quiets: bool = True,
    promo_kinds: tuple[int, ...] = PROMO_KINDS,
) -> list[Move]:
    """Pseudo-legal moves for `color` (king safety not yet enforced).

    Capture targets never include kings.  Castling is handled separately in
    `_legal_moves_raw` because its legality needs attack information.
    """
    moves = []
    add = moves.append
    fwd = 8 * color
    last_rank = 7 if color == WHITE else 0
    dbl_rank = 1 if color == WHITE else 6
    for sq in range(64):
        code = board[sq]
        if not code or (code > 0) != (color > 0):
            continue
        kind = abs(code)
        if kind == PAWN:
            to = sq + fwd
            if quiets and not board[to]:
                if square_rank(to) == last_rank:
                    for pk in promo_kinds:
                        add(Move(sq, to, promotion=pk))
                else:
                    add(Move(sq, to))
                    if square_rank(sq) == dbl_rank and not board[to + fwd]:
                        add(Move(sq, to + fwd, is_double_push=True))
            if captures:
                for to in PAWN_ATTACKS[color][sq]:
                    tgt = board[to]
                    if tgt and (tgt > 0) != (color > 0) and abs(tgt) != KING:
                        if square_rank(to) == last_rank:
                            for pk in promo_kinds:
                                add(Move(sq, to, promotion=pk, is_capture=True))
                        else:
                            add(Move(sq, to, is_capture=True))
                    elif to == ep and not tgt:
                        add(Move(sq, to, is_capture=True, is_en_passant=True))
        elif kind == KNIGHT or kind == KING:
            table = KNIGHT_ATTACKS if kind == KNIGHT else KING_ATTACKS
            for to in table[sq]:
                tgt = board[to]
                if not tgt:
                    if quiets:
                        add(Move(sq, to))
                elif captures and (tgt > 0) != (color > 0) and abs(tgt) != KING:
                    add(Move(sq, to, is_capture=True))
        else:
            if kind == ROOK:
                rays = ROOK_RAYS[sq]
            elif kind == BISHOP:
                rays = BISHOP_RAYS[sq]
            else:
                rays = ROOK_RAYS[sq] + BISHOP_RAYS[sq]
            for ray in rays:
                for to in ray:
                    tgt = board[to]
                    if not tgt:
                        if quiets:
                            add(Move(sq, to))
                    else:
                        if captures and (tgt > 0) != (color > 0) and abs(tgt) != KING:
                            add(Move(sq, to, is_capture=True))
                        break
    return moves


def _king_safe_after(board, m: Move, color: int, king_sq: int) -> bool:
    code = board[m.from_sq]
    undo = _make_raw(board, m, code)
    ks = m.to_sq if abs(code) == KING else king_sq
    safe = not _attacked_by(board, ks, -color)
    _unmake_raw(board, undo)
    return safe


def _castling_moves(board, color: int, castling: int) -> list[Move]:
    moves = []
    rank = 0 if color == WHITE else 7
    ksq = square(4, rank)
    if board[ksq] != color * KING:
        return moves
    k_bit = CASTLE_WK if color == WHITE else CASTLE_BK
    q_bit = CASTLE_WQ if color == WHITE else CASTLE_BQ
    if not (castling & (k_bit | q_bit)):
        return moves
    if _attacked_by(board, ksq, -color):
        return moves
    if castling & k_bit and board[square(7, rank)] == color * ROOK:
        f_sq, g_sq = square(5, rank), square(6, rank)
        if not board[f_sq] and not board[g_sq] and not _attacked_by(board, f_sq, -color):
            moves.append(Move(ksq, g_sq, is_castle=True))
    if castling & q_bit and board[square(0, rank)] == color * ROOK:
        b_sq, c_sq, d_sq = square(1, rank), square(2, rank), square(3, rank)
        if (
            not board[b_sq]
            and not board[c_sq]
            and not board[d_sq]
            and not _attacked_by(board, d_sq, -color)
        ):
            moves.append(Move(ksq, c_sq, is_castle=True))
    return moves


def _legal_moves_raw(
    board,
    color: int,
    castling: int,
    ep: Optional[int],
    *,
    captures: bool = True,
    quiets: bool = True,
    with_castling: bool = True,
    promo_kinds: tuple[int, ...] = PROMO_KINDS,
) -> list[Move]:
    king_sq = board.index(color * KING)
    pseudo = _pseudo_moves(board, color, ep, captures=captures, quiets=quiets, promo_kinds=promo_kinds)
    moves = [m for m in pseudo if _king_safe_after(board, m, color, king_sq)]
    if quiets and with_castling:
        moves.extend(
            m for m in _castling_moves(board, color, castling) if _king_safe_after(board, m, color, king_sq)
        )
    return moves


def legal_moves(pos: Position) -> list[Move]:
    """All FIDE-legal moves for the side to move, sorted (from, to, promotion)."""
    board = list(pos.board)
    moves = _legal_moves_raw(board, pos.side_to_move, pos.castling, pos.en_passant)
    moves.sort(key=Move.sort_key)
    return moves


def _apply_unchecked(pos: Position, m: Move) -> Position:
    board = list(pos.board)
    code = board[m.from_sq]
    color = pos.side_to_move
    captured = board[m.to_sq]
    _make_raw(board, m, code)

    castling = pos.castling
    if abs(code) == KING:
        castling &= ~(CASTLE_WK | CASTLE_WQ) if color == WHITE else ~(CASTLE_BK | CASTLE_BQ)
    for sq, bit in ((0, CASTLE_WQ), (7, CASTLE_WK), (56, CASTLE_BQ), (63, CASTLE_BK)):
        if m.from_sq == sq or m.to_sq == sq:
            castling &= ~bit

    ep = None
    if m.is_double_push:
        ep = m.from_sq + 8 * color

    halfmove = 0 if (m.is_capture or abs(code) == PAWN) else pos.halfmove_clock + 1
    fullmove = pos.fullmove_number + (1 if color == BLACK else 0)
    if not (m.is_capture or captured == 0):
        raise IllegalMoveError(m, pos.fen())
    return Position(tuple(board), -color, castling, ep, halfmove, fullmove)


def apply_move(pos: Position, m: Move) -> Position:
    """Apply a legal move, validating it against `legal_moves`."""
    if m not in legal_moves(pos):
        raise IllegalMoveError(m, pos.fen())
    return _apply_unchecked(pos, m)


def is_check(pos: Position) -> bool:
    return _attacked_by(pos.board, pos.king_square(pos.side_to_move), -pos.side_to_move)


def is_checkmate(pos: Position) -> bool:
    return is_check(pos) and not legal_moves(pos)


def is_stalemate(pos: Position) -> bool:
    return not is_check(pos) and not legal_moves(pos)


def insufficient_material(pos: Position) -> bool:
    """K vs K, K+minor vs K, or same-colored-bishops-only endings."""
    minors = []
    bishops_sq = []
    for sq, code in enumerate(pos.board):
        if not code:
            continue
        kind = abs(code)
        if kind in (PAWN, ROOK, QUEEN):
            return False
        if kind == KNIGHT:
            minors.append(sq)
        elif kind == BISHOP:
            minors.append(sq)
            bishops_sq.append(sq)
    if len(minors) <= 1:
        return True
    if len(minors) == len(bishops_sq):
        shades = {(square_file(s) + square_rank(s)) & 1 for s in bishops_sq}
        return len(shades) == 1
    return False


def repetition_key(pos: Position):
    """Key for threefold-repetition detection (FIDE: EP counts only if usable)."""
    ep = pos.en_passant
    if ep is not None:
        board = list(pos.board)
        usable = any(
            m.is_en_passant
            for m in _legal_moves_raw(board, pos.side_to_move, pos.castling, ep, quiets=False)
        )
        if not usable:
            ep = None
    return (pos.board, pos.side_to_move, pos.castling, ep)


def perft(pos: Position, depth: int) -> int:
    """Count leaf nodes of the legal-move tree (validation oracle hook)."""
    if depth == 0:
        return 1
    moves = legal_moves(pos)
    if depth == 1:
        return len(moves)
    return sum(perft(_apply_unchecked(pos, m), depth - 1) for m in moves)


# ---------------------------------------------------------------------------
# FEN codec


def parse_fen(text: str, *, strict: bool = True) -> Position:
    """Parse a 4-6 field FEN string into a validated Position.

    With strict=True (the default) the side not to move may not be in check;
    internal turn-flipped analyses construct positions directly instead.
    """
    fields = text.split()
    if not 4 <= len(fields) <= 6:
        raise FenError("fen", f"expected 4-6 fields, got {len(fields)}")
    placement, stm_f, castling_f, ep_f = fields[:4]
    halfmove_f = fields[4] if len(fields) > 4 else "0"
    fullmove_f = fields[5] if len(fields) > 5 else "1"

    ranks = placement.split("/")
    if len(ranks) != 8:
        raise FenError("placement", f"expected 8 ranks, got {len(ranks)}")
    board = [0] * 64
    counts = {WHITE: 0, BLACK: 0}
    kings = {WHITE: 0, BLACK: 0}
    pawns = {WHITE: 0, BLACK: 0}
    for i, row in enumerate(ranks):
        rank = 7 - i
        file = 0
        for ch in row:
            if ch.isdigit():
                if ch == "0" or ch == "9":
                    raise FenError("placement", f"bad empty-run digit {ch!r}")
                file += int(ch)
            else:
                kind = CHAR_KINDS.get(ch.lower())
                if kind is None:
                    raise FenError("placement", f"bad piece char {ch!r}")
                if file >= 8:
                    raise FenError("placement", f"rank {rank + 1} overflows")
                color = WHITE if ch.isupper() else BLACK
                if kind == PAWN:
                    if rank in (0, 7):
                        raise FenError("placement", "pawn on back rank")
                    pawns[color] += 1
                if kind == KING:
                    kings[color] += 1
                counts[color] += 1
                board[square(file, rank)] = color * kind
                file += 1
        if file != 8:
            raise FenError("placement", f"rank {rank + 1} sums to {file}, not 8")
    for color, label in ((WHITE, "white"), (BLACK, "black")):
        if kings[color] != 1:
            raise FenError("placement", f"{label} must have exactly one king, got {kings[color]}")
        if pawns[color] > 8:
            raise FenError("placement", f"{label} has {pawns[color]} pawns")
        if counts[color] > 16:
            raise FenError("placement", f"{label} has {counts[color]} pieces")

    if stm_f == "w":
        stm = WHITE
    elif stm_f == "b":
        stm = BLACK
    else:
        raise FenError("side_to_move", f"expected 'w' or 'b', got {stm_f!r}")

    castling = 0
    if castling_f != "-":
        for ch in castling_f:
            bit = {"K": CASTLE_WK, "Q": CASTLE_WQ, "k": CASTLE_BK, "q": CASTLE_BQ}.get(ch)
            if bit is None or castling & bit:
                raise FenError("castling", f"bad castling field {castling_f!r}")
            castling |= bit
    # Rights without the king/rook at home are impossible; drop them quietly.
    if board[4] != KING:
        castling &= ~(CASTLE_WK | CASTLE_WQ)
    if board[7] != ROOK:
        castling &= ~CASTLE_WK
    if board[0] != ROOK:
        castling &= ~CASTLE_WQ
    if board[60] != -KING:
        castling &= ~(CASTLE_BK | CASTLE_BQ)
    if board[63] != -ROOK:
        castling &= ~CASTLE_BK
    if board[56] != -ROOK:
        castling &= ~CASTLE_BQ

    ep = None
    if ep_f != "-":
        try:
            ep = parse_square(ep_f)
        except ValueError:
            raise FenError("en_passant", f"bad square {ep_f!r}") from None
        rank = square_rank(ep)
        if (stm == WHITE and rank != 5) or (stm == BLACK and rank != 2):
            raise FenError("en_passant", f"{ep_f} on wrong rank for side to move")
        if board[ep]:
            raise FenError("en_passant", f"{ep_f} is occupied")
        pawn_sq = ep - 8 if stm == WHITE else ep + 8
        if board[pawn_sq] != -stm * PAWN:
            raise FenError("en_passant", f"no pawn to capture behind {ep_f}")

    try:
        halfmove = int(halfmove_f)
        fullmove = int(fullmove_f)
    except ValueError:
        raise FenError("counters", f"bad counters {halfmove_f!r} {fullmove_f!r}") from None
    if halfmove < 0:
        raise FenError("counters", "halfmove clock negative")
    if fullmove < 1:
        raise FenError("counters", "fullmove number below 1")

    pos = Position(tuple(board), stm, castling, ep, halfmove, fullmove)
    if strict and _attacked_by(board, pos.king_square(-stm), stm):
        raise FenError("side_to_move", "side not to move is in check")
    return pos


def serialize_fen(pos: Position) -> str:
    rows = []
    for rank in range(7, -1, -1):
        row = ""
        run = 0
        for file in range(8):
            code = pos.board[square(file, rank)]
            if not code:
                run += 1
            else:
                if run:
                    row += str(run)
                    run = 0
                row += Piece.from_code(code).char()
        if run:
            row += str(run)
        rows.append(row)
    castling = "".join(
        ch
        for ch, bit in (("K", CASTLE_WK), ("Q", CASTLE_WQ), ("k", CASTLE_BK), ("q", CASTLE_BQ))
        if pos.castling & bit
    )
    return " ".join(
        (
            "/".join(rows),
            "w" if pos.side_to_move == WHITE else "b",
            castling or "-",
            square_name(pos.en_passant) if pos.en_passant is not None else "-",
            str(pos.halfmove_clock),
            str(pos.fullmove_number),
        )
    )


def startpos() -> Position:
    return parse_fen(START_FEN)


def mirror_position(pos: Position) -> Position:
    """Flip the board vertically and swap colors (for symmetry checks)."""
    board = [0] * 64
    for sq, code in enumerate(pos.board):
        if code:
            board[sq ^ 56] = -code
    castling = 0
    for src, dst in (
        (CASTLE_WK, CASTLE_BK),
        (CASTLE_WQ, CASTLE_BQ),
        (CASTLE_BK, CASTLE_WK),
        (CASTLE_BQ, CASTLE_WQ),
    ):
        if pos.castling & src:
            castling |= dst
    ep = pos.en_passant ^ 56 if pos.en_passant is not None else None
    return Position(
        tuple(board),
        -pos.side_to_move,
        castling,
        ep,
        pos.halfmove_clock,
        pos.fullmove_number,
    )
