"""Piece-interaction networks and spectral tension analytics for chess corpora."""

__version__ = "0.1.0"

from .board import (
    BLACK,
    WHITE,
    Move,
    Piece,
    Position,
    apply_move,
    legal_moves,
    parse_fen,
    serialize_fen,
    startpos,
)
from .tension import TensionGraph, build_tension_network
from .metrics import PlyMetrics, compute_ply_metrics, spectral_radius

__all__ = [
    "BLACK",
    "WHITE",
    "Move",
    "Piece",
    "Position",
    "PlyMetrics",
    "TensionGraph",
    "apply_move",
    "build_tension_network",
    "compute_ply_metrics",
    "legal_moves",
    "parse_fen",
    "serialize_fen",
    "spectral_radius",
    "startpos",
]
