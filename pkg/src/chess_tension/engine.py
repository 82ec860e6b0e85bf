"""UCI engine client: handshake, fixed-depth evaluation, engine self-play.

One child process per handle, one outstanding search per handle.  The info
parser tolerates interleaved chatter (currmove lines, multipv output).  Mate
scores are mapped to the +/-(30000 - distance) sentinel band and all scores
are reported from White's perspective.
"""

from __future__ import annotations

import logging
import queue
import random
import subprocess
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .board import (
    BLACK,
    WHITE,
    Position,
    _apply_unchecked,
    insufficient_material,
    is_check,
    legal_moves,
    repetition_key,
    startpos,
)
from .notation import SanError, move_to_san, parse_san, parse_uci
from .pgn import GameRecord, SourceClass, write_game_pgn

log = logging.getLogger("chess_tension.engine")

MATE_BASE = 30000
DEFAULT_TIMEOUT = 60.0
SELFPLAY_PLY_CAP = 400


class EngineError(RuntimeError):
    """Engine died, timed out, or spoke unparsable UCI."""


@dataclass
class EvalRecord:
    ply: int
    score_cp: float  # White perspective; mate sentinel +/-(30000 - distance)
    depth: int

    @property
    def is_mate_score(self) -> bool:
        return abs(self.score_cp) > MATE_BASE - 1000


def parse_info_score(line: str) -> Optional[tuple[int, float, int]]:
    """(depth, stm-relative cp, multipv) from an info line, or None."""
    tokens = line.split()
    if not tokens or tokens[0] != "info" or "score" not in tokens:
        return None
    depth = 0
    multipv = 1
    score: Optional[float] = None
    i = 1
    while i < len(tokens):
        tok = tokens[i]
        try:
            if tok == "depth":
                depth = int(tokens[i + 1])
                i += 2
            elif tok == "multipv":
                multipv = int(tokens[i + 1])
                i += 2
            elif tok == "score":
                kind, value = tokens[i + 1], int(tokens[i + 2])
                if kind == "cp":
                    score = float(value)
                elif kind == "mate":
                    score = float(MATE_BASE - abs(value)) * (1 if value > 0 else -1)
                else:
                    return None
                i += 3
            else:
                i += 1
        except (IndexError, ValueError):
            return None
    if score is None:
        return None
    return depth, score, multipv


class EngineHandle:
    """One UCI engine process; idle/searching/dead lifecycle."""

    def __init__(
        self,
        path: Union[str, Path, Sequence[str]],
        options: Optional[dict[str, str]] = None,
        *,
        timeout: float = DEFAULT_TIMEOUT,
    ):
        argv = [str(path)] if isinstance(path, (str, Path)) else [str(p) for p in path]
        self.path = argv[-1]
        self.options = dict(options or {})
        self.options.setdefault("Threads", "1")
        self.timeout = timeout
        self.state = "idle"
        self.name = ""
        self._proc = subprocess.Popen(
            argv,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
            text=True,
            bufsize=1,
        )
        self._lines: queue.Queue[str] = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self._handshake()

    def _pump(self) -> None:
        assert self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line.rstrip("\n"))

    def _send(self, line: str) -> None:
        if self._proc.poll() is not None:
            self.state = "dead"
            raise EngineError(f"engine {self.path} is dead")
        assert self._proc.stdin is not None
        self._proc.stdin.write(line + "\n")
        self._proc.stdin.flush()

    def _read(self, timeout: Optional[float] = None) -> str:
        try:
            return self._lines.get(timeout=timeout or self.timeout)
        except queue.Empty:
            self.state = "dead"
            raise EngineError(f"engine {self.path}: protocol timeout") from None

    def _wait_for(self, token: str) -> list[str]:
        seen = []
        while True:
            line = self._read()
            seen.append(line)
            if line.strip() == token:
                return seen

    def _handshake(self) -> None:
        self._send("uci")
        for line in self._wait_for("uciok"):
            if line.startswith("id name "):
                self.name = line[len("id name "):]
        for key, value in self.options.items():
            self._send(f"setoption name {key} value {value}")
        self._send("isready")
        self._wait_for("readyok")

    def new_game(self) -> None:
        self._send("ucinewgame")
        self._send("isready")
        self._wait_for("readyok")

    def search(self, position_cmd: str, depth: int) -> tuple[str, Optional[tuple[int, float, int]]]:
        """go to fixed depth; returns (bestmove token, last multipv-1 score)."""
        if self.state != "idle":
            raise EngineError("handle already searching")
        self.state = "searching"
        try:
            self._send(position_cmd)
            self._send(f"go depth {depth}")
            last_score: Optional[tuple[int, float, int]] = None
            while True:
                line = self._read()
                if line.startswith("bestmove"):
                    parts = line.split()
                    if len(parts) < 2:
                        raise EngineError(f"bad bestmove line: {line!r}")
                    return parts[1], last_score
                info = parse_info_score(line)
                if info is not None and info[2] == 1:
                    last_score = info
        finally:
            if self.state == "searching":
                self.state = "idle"

    def quit(self) -> None:
        if self._proc.poll() is None:
            try:
                self._send("quit")
                self._proc.wait(timeout=5)
            except Exception:
                self._proc.kill()
        self.state = "dead"

    def __enter__(self) -> "EngineHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.quit()


def position_command(moves_uci: Sequence[str], fen: Optional[str] = None) -> str:
    base = f"position fen {fen}" if fen else "position startpos"
    if moves_uci:
        return base + " moves " + " ".join(moves_uci)
    return base


def evaluate(handle: EngineHandle, pos: Position, depth: int, *, ply: int = 0) -> EvalRecord:
    """Fixed-depth evaluation of one position, White-perspective centipawns."""
    handle.new_game()
    _, score = handle.search(position_command([], fen=pos.fen()), depth)
    if score is None:
        raise EngineError("engine reported no score")
    _, cp, _ = score
    if pos.side_to_move == BLACK:
        cp = -cp
    return EvalRecord(ply=ply, score_cp=cp, depth=depth)


def annotate_game_evals(handle: EngineHandle, record: GameRecord, depth: int) -> list[EvalRecord]:
    """One EvalRecord per ply of the game."""
    out = []
    handle.new_game()
    moves_uci: list[str] = []
    pos = startpos()
    for ply, move in enumerate(record.moves, start=1):
        pos = _apply_unchecked(pos, move)
        moves_uci.append(move.uci())
        _, score = handle.search(position_command(moves_uci), depth)
        if score is None:
            # terminal positions may produce "bestmove (none)" without score
            mate = MATE_BASE if is_check(pos) else 0
            cp = float(-mate if pos.side_to_move == WHITE else mate)
            out.append(EvalRecord(ply=ply, score_cp=cp, depth=depth))
            continue
        _, cp, _ = score
        if pos.side_to_move == BLACK:
            cp = -cp
        out.append(EvalRecord(ply=ply, score_cp=cp, depth=depth))
    return out


def annotate_corpus_evals(
    games: Sequence[tuple[str, GameRecord]],
    handle: EngineHandle,
    depth: int = 20,
    *,
    done_log: Optional[Path] = None,
) -> dict[str, list[EvalRecord]]:
    """Evaluate every ply of every game; resumable via a done-log file."""
    done: set[str] = set()
    if done_log is not None and done_log.exists():
        done = {line.strip() for line in done_log.read_text().splitlines() if line.strip()}
    out: dict[str, list[EvalRecord]] = {}
    for game_id, record in games:
        if game_id in done:
            continue
        try:
            out[game_id] = annotate_game_evals(handle, record, depth)
        except EngineError as exc:
            log.warning("eval failed game_id=%s: %s", game_id, exc)
            continue
        if done_log is not None:
            with open(done_log, "a", encoding="utf-8") as fh:
                fh.write(game_id + "\n")
    return out


@dataclass
class SelfplayResult:
    sans: list[str]
    moves_uci: list[str]
    depths: list[int]  # depth used for each ply (0 for opening plies)
    result: str
    termination: str


def selfplay_game(
    white: EngineHandle,
    black: EngineHandle,
    base_depth: int,
    opening: Sequence[str],
    rng: random.Random,
    *,
    a_is_white: bool = True,
    ply_cap: int = SELFPLAY_PLY_CAP,
) -> SelfplayResult:
    """One engine-vs-engine game from a seeded opening.

    Side A draws each move's depth from {D, D+1}, side B from {D, D-1};
    `a_is_white` should alternate across a batch so neither color is
    systematically deeper.
    """
    if base_depth < 2:
        raise ValueError("base_depth must be >= 2")
    pos = startpos()
    sans: list[str] = []
    moves_uci: list[str] = []
    depths: list[int] = []
    for text in opening:
        try:
            m = parse_uci(pos, text) if len(text) in (4, 5) and text[0] in "abcdefgh" and text[1].isdigit() else parse_san(pos, text)
        except SanError as exc:
            raise ValueError(f"illegal opening move {text!r}: {exc}") from exc
        sans.append(move_to_san(pos, m))
        moves_uci.append(m.uci())
        depths.append(0)
        pos = _apply_unchecked(pos, m)

    white.new_game()
    black.new_game()
    seen: dict = {repetition_key(pos): 1}
    termination = "ply-cap"
    while len(moves_uci) < ply_cap:
        moves = legal_moves(pos)
        if not moves:
            termination = "checkmate" if is_check(pos) else "stalemate"
            break
        if pos.halfmove_clock >= 100:
            termination = "fifty-move"
            break
        if insufficient_material(pos):
            termination = "insufficient-material"
            break
        mover_is_white = pos.side_to_move == WHITE
        mover_is_a = mover_is_white == a_is_white
        depth = base_depth + (rng.choice((0, 1)) if mover_is_a else rng.choice((0, -1)))
        handle = white if mover_is_white else black
        best, _ = handle.search(position_command(moves_uci), depth)
        if best in ("(none)", "0000"):
            raise EngineError("engine resigned unexpectedly")
        try:
            m = parse_uci(pos, best)
        except SanError as exc:
            raise EngineError(f"engine played illegal move {best!r}: {exc}") from exc
        sans.append(move_to_san(pos, m))
        moves_uci.append(best)
        depths.append(depth)
        pos = _apply_unchecked(pos, m)
        key = repetition_key(pos)
        seen[key] = seen.get(key, 0) + 1
        if seen[key] >= 3:
            termination = "threefold"
            break

    if termination == "checkmate":
        result = "0-1" if pos.side_to_move == WHITE else "1-0"
    elif termination == "ply-cap":
        result = "*"
    else:
        result = "1/2-1/2"
    return SelfplayResult(sans, moves_uci, depths, result, termination)


def selfplay_pgn(
    res: SelfplayResult,
    *,
    base_depth: int,
    seed: int,
    game_index: int,
    engine_name: str = "",
) -> str:
    headers = {
        "Event": "depth-seeded self-play",
        "White": engine_name or "engine",
        "Black": engine_name or "engine",
        "Round": str(game_index),
        "Result": res.result,
        "BaseDepth": str(base_depth),
        "Seed": str(seed),
        "SourceClass": SourceClass.SYNTHETIC.value,
    }
    comments = {
        k: f"d={d}" for k, d in enumerate(res.depths, start=1) if d > 0
    }
    return write_game_pgn(headers, res.sans, res.result, comments=comments)
