"""Piece-interaction network of a position: attack, defense, and control links.

Link semantics (evaluated with the side to move disregarded):

* attack: a piece can legally capture an enemy piece; checks are injected as
  attacks on the enemy king when the checker is not absolutely pinned, since
  king captures are never legal moves.
* defense: piece i defends same-color piece j if some enemy capture of j
  could be answered by i legally capturing the capturer on its new square.
* control: piece i controls a vacant square if some enemy piece could
  legally move there and then be legally captured by i on that square.

Turn-flip convention: the position is re-stamped with the acting color to
move; en-passant rights are kept only for the side they belong to; castling
is never a control-enabling move; promotions inside the one-move lookahead
materialize as queens.  Directed attack/defense links fold into undirected
edges of weight 2 when both directions hold, 1 otherwise; control edges
always have weight 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .board import (
    BISHOP,
    BISHOP_RAYS,
    BLACK,
    KING,
    QUEEN,
    ROOK,
    ROOK_RAYS,
    WHITE,
    Move,
    Position,
    _attackers_of,
    _attacked_by,
    _legal_moves_raw,
    _make_raw,
    _unmake_raw,
    square,
    square_file,
    square_name,
    square_rank,
)


class LinkKind(str, Enum):
    ATTACK = "attack"
    DEFENSE = "defense"
    CONTROL = "control"


@dataclass(frozen=True)
class Edge:
    """Undirected edge between two squares; `source` is the originating
    piece square (lower square when both directions hold)."""

    a: int
    b: int
    weight: int
    kind: LinkKind
    source: int


@dataclass(frozen=True)
class TensionGraph:
    position: Position
    edges: tuple[Edge, ...]
    attack_directed: frozenset[tuple[int, int]]
    defense_directed: frozenset[tuple[int, int]]
    control_directed: frozenset[tuple[int, int]]

    @property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((64, 64), dtype=np.int64)
        for e in self.edges:
            adj[e.a, e.b] = e.weight
            adj[e.b, e.a] = e.weight
        return adj

    def edge_count(self, kind: Optional[LinkKind] = None) -> int:
        if kind is None:
            return len(self.edges)
        return sum(1 for e in self.edges if e.kind == kind)

    def weight_sum(self, kind: Optional[LinkKind] = None) -> int:
        return sum(e.weight for e in self.edges if kind is None or e.kind == kind)

    def to_json_dict(self) -> dict:
        """Edge list ready for serialization and figure rendering."""
        return {
            "fen": self.position.fen(),
            "edges": [
                {
                    "from": square_name(e.a),
                    "to": square_name(e.b),
                    "weight": e.weight,
                    "kind": e.kind.value,
                    "source": square_name(e.source),
                }
                for e in self.edges
            ],
        }


def _flip_ep(pos: Position, color: int) -> Optional[int]:
    # En-passant rights belong to the side that was to move.
    return pos.en_passant if color == pos.side_to_move else None


def capture_legal_moves(pos: Position, color: int) -> list[Move]:
    """Captures `color` could legally play if it were its turn.

    King safety is always enforced for the mover; the flipped-turn position
    may be strictly illegal (opponent in check), which is fine here.
    """
    board = list(pos.board)
    moves = _legal_moves_raw(board, color, 0, _flip_ep(pos, color), quiets=False)
    moves.sort(key=Move.sort_key)
    return moves


def _victim_square(m: Move) -> int:
    if m.is_en_passant:
        return square(square_file(m.to_sq), square_rank(m.from_sq))
    return m.to_sq


def _capture_legal_onto(board, color: int, target: int) -> list[int]:
    """Squares of `color` pieces that can legally capture on `target` now."""
    if abs(board[target]) == KING:
        return []
    out = []
    king_sq = board.index(color * KING)
    for cand in _attackers_of(board, target, color):
        code = board[cand]
        saved_t = board[target]
        board[cand] = 0
        board[target] = code
        ks = target if abs(code) == KING else king_sq
        if not _attacked_by(board, ks, -color):
            out.append(cand)
        board[cand] = code
        board[target] = saved_t
    return out


def _abs_pinned(board, sq: int, color: int) -> bool:
    """Whether the piece on sq is absolutely pinned to its own king."""
    king_sq = board.index(color * KING)
    for rays, kinds in ((ROOK_RAYS, (ROOK, QUEEN)), (BISHOP_RAYS, (BISHOP, QUEEN))):
        for ray in rays[king_sq]:
            if sq not in ray:
                continue
            seen_self = False
            for s in ray:
                code = board[s]
                if s == sq:
                    seen_self = True
                    continue
                if not code:
                    continue
                if not seen_self:
                    break  # blocker between king and sq
                if (code > 0) != (color > 0) and abs(code) in kinds:
                    return True
                break
            break
    return False


def _directed_links(pos: Position):
    attacks: set[tuple[int, int]] = set()
    defenses: set[tuple[int, int]] = set()
    controls: set[tuple[int, int]] = set()
    board = list(pos.board)

    for color in (WHITE, BLACK):
        ep = _flip_ep(pos, color)
        caps = _legal_moves_raw(board, color, 0, ep, quiets=False, promo_kinds=(QUEEN,))
        for m in caps:
            victim = _victim_square(m)
            attacks.add((m.from_sq, victim))
            # Defenders of the victim recapture on the capturer's new square.
            code = board[m.from_sq]
            undo = _make_raw(board, m, code)
            for d in _capture_legal_onto(board, -color, m.to_sq):
                defenses.add((d, victim))
            _unmake_raw(board, undo)

        quiets = _legal_moves_raw(
            board, color, 0, ep, captures=False, with_castling=False, promo_kinds=(QUEEN,)
        )
        for m in quiets:
            code = board[m.from_sq]
            undo = _make_raw(board, m, code)
            for c in _capture_legal_onto(board, -color, m.to_sq):
                controls.add((c, m.to_sq))
            _unmake_raw(board, undo)

    # Checks as attacks on kings: king capture is never a legal move, so a
    # non-pinned checker is linked to the enemy king by rule.
    for color in (WHITE, BLACK):
        king_sq = board.index(-color * KING)
        for sq in _attackers_of(board, king_sq, color):
            if abs(board[sq]) == KING:
                continue
            if not _abs_pinned(board, sq, color):
                attacks.add((sq, king_sq))

    return attacks, defenses, controls


def attack_links(pos: Position) -> frozenset[tuple[int, int]]:
    """Directed (attacker square, victim square) pairs, checks included."""
    return frozenset(_directed_links(pos)[0])


def defense_links(pos: Position) -> frozenset[tuple[int, int]]:
    """Directed (defender square, defended square) pairs; kings never defended."""
    return frozenset(_directed_links(pos)[1])


def control_links(pos: Position) -> frozenset[tuple[int, int]]:
    """Directed (piece square, controlled vacant square) pairs."""
    return frozenset(_directed_links(pos)[2])


def build_tension_network(pos: Position) -> TensionGraph:
    """Fold the directed link sets into the undirected weighted network."""
    att, dfn, ctl = _directed_links(pos)
    board = pos.board
    edges: list[Edge] = []
    for directed, kind in ((att, LinkKind.ATTACK), (dfn, LinkKind.DEFENSE)):
        seen = set()
        for a, b in directed:
            lo, hi = (a, b) if a < b else (b, a)
            if (lo, hi) in seen:
                continue
            seen.add((lo, hi))
            mutual = (b, a) in directed
            edges.append(Edge(lo, hi, 2 if mutual else 1, kind, lo if mutual else a))
    for a, b in ctl:
        lo, hi = (a, b) if a < b else (b, a)
        edges.append(Edge(lo, hi, 1, LinkKind.CONTROL, a))
    for e in edges:  # structural contract, checked on every analyzed ply
        if e.kind == LinkKind.ATTACK:
            assert board[e.a] * board[e.b] < 0, f"attack edge within one color at {e}"
        elif e.kind == LinkKind.DEFENSE:
            assert board[e.a] * board[e.b] > 0, f"defense edge across colors at {e}"
        else:
            assert (board[e.a] == 0) != (board[e.b] == 0), f"control edge needs one vacant end at {e}"
    edges.sort(key=lambda e: (e.a, e.b, e.kind.value))
    return TensionGraph(
        position=pos,
        edges=tuple(edges),
        attack_directed=frozenset(att),
        defense_directed=frozenset(dfn),
        control_directed=frozenset(ctl),
    )
