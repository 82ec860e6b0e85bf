"""PGN corpus ingest: streaming parser, metadata classification, reporting.

Built for the messiness of real archives: comments, nested variations, NAGs,
annotation glyphs, stray Latin-1 bytes, corrupt games mid-file.  A malformed
game is reported as a recoverable error item and parsing resumes at the next
game's header block.
"""

from __future__ import annotations

import io
import json
import re
import textwrap
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

from .board import Move, Position, START_FEN, _apply_unchecked, parse_fen
from .notation import SanError, parse_san


class SourceClass(str, Enum):
    HUMAN = "human"
    AI = "ai"
    SYNTHETIC = "synthetic"


class Outcome(str, Enum):
    WHITE_WIN = "1-0"
    BLACK_WIN = "0-1"
    DRAW = "1/2-1/2"
    UNKNOWN = "*"

    @classmethod
    def from_token(cls, token: Optional[str]) -> "Outcome":
        try:
            return cls(token)
        except ValueError:
            return cls.UNKNOWN


RESULT_TOKENS = {o.value for o in Outcome}


@dataclass(frozen=True)
class GameRecord:
    moves: tuple[Move, ...]
    sans: tuple[str, ...]
    headers: dict[str, str]
    source_class: SourceClass
    outcome: Outcome
    initial_fen: str = START_FEN

    def __len__(self) -> int:
        return len(self.moves)

    def positions(self) -> Iterator[Position]:
        """Positions after each ply, in order."""
        pos = parse_fen(self.initial_fen)
        for m in self.moves:
            pos = _apply_unchecked(pos, m)
            yield pos

    def elo(self, side: str) -> Optional[int]:
        raw = self.headers.get(f"{side}Elo", "")
        try:
            return int(raw)
        except ValueError:
            return None


@dataclass(frozen=True)
class PgnGameError(Exception):
    game_index: int
    ply: int
    message: str

    def __str__(self) -> str:
        return f"game {self.game_index}, ply {self.ply}: {self.message}"


@dataclass(frozen=True)
class CorpusSpec:
    paths: tuple[str, ...]
    class_label: SourceClass = SourceClass.HUMAN
    elo_filter: Optional[tuple[int, int]] = None
    max_games: Optional[int] = None
    require_both_elos: bool = False
    bin_width: int = 100

    def __post_init__(self):
        if self.elo_filter is not None and self.elo_filter[0] > self.elo_filter[1]:
            raise ValueError("elo_filter min must be <= max")
        if self.max_games is not None and self.max_games <= 0:
            raise ValueError("max_games must be positive when set")
        if self.bin_width <= 0:
            raise ValueError("bin_width must be positive")


@dataclass
class IngestReport:
    games_read: int = 0
    games_kept: int = 0
    games_skipped: int = 0
    skip_reasons: dict[str, int] = field(default_factory=dict)

    def skip(self, reason: str) -> None:
        self.games_skipped += 1
        self.skip_reasons[reason] = self.skip_reasons.get(reason, 0) + 1

    def merged_with(self, other: "IngestReport") -> "IngestReport":
        reasons = dict(self.skip_reasons)
        for k, v in other.skip_reasons.items():
            reasons[k] = reasons.get(k, 0) + v
        return IngestReport(
            self.games_read + other.games_read,
            self.games_kept + other.games_kept,
            self.games_skipped + other.games_skipped,
            reasons,
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "games_read": self.games_read,
                "games_kept": self.games_kept,
                "games_skipped": self.games_skipped,
                "skip_reasons": dict(sorted(self.skip_reasons.items())),
            },
            indent=2,
        )


# ---------------------------------------------------------------------------
# Raw game splitting and movetext tokenization

_HEADER_RE = re.compile(r'^\[(\w+)\s+"((?:[^"\\]|\\.)*)"\]\s*$')
_MOVENUM_RE = re.compile(r"^\d+\.*$")
_NAG_RE = re.compile(r"^\$\d+$")
_CASTLE_FIX = {"0-0": "O-O", "0-0-0": "O-O-O", "O-O+": "O-O+", "o-o": "O-O"}


def _split_raw_games(text: str) -> Iterator[tuple[dict[str, str], str]]:
    """Yield (headers, movetext) blocks; resyncs on header lines."""
    headers: dict[str, str] = {}
    movetext_lines: list[str] = []
    in_moves = False
    for line in text.splitlines():
        line = line.rstrip("\n")
        if line.startswith("%"):  # PGN escape mechanism
            continue
        m = _HEADER_RE.match(line)
        if m:
            if in_moves or (m.group(1) in headers):
                # next game (or a moveless record being resynced)
                yield headers, "\n".join(movetext_lines)
                headers, movetext_lines, in_moves = {}, [], False
            headers[m.group(1)] = m.group(2)
        elif line.strip():
            in_moves = True
            movetext_lines.append(line)
    if headers or movetext_lines:
        yield headers, "\n".join(movetext_lines)


def _tokenize_movetext(movetext: str) -> tuple[list[str], Optional[str]]:
    """SAN tokens and the trailing result token; comments/variations dropped."""
    # strip brace comments (may span lines) and ;-comments
    out = []
    depth_paren = 0
    in_brace = False
    i = 0
    cur = []
    text = movetext
    while i < len(text):
        ch = text[i]
        if in_brace:
            if ch == "}":
                in_brace = False
        elif ch == "{":
            in_brace = True
        elif ch == "(":
            depth_paren += 1
        elif ch == ")":
            if depth_paren > 0:
                depth_paren -= 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif depth_paren == 0:
            cur.append(ch)
        i += 1
    tokens = "".join(cur).split()
    sans: list[str] = []
    result: Optional[str] = None
    for tok in tokens:
        if tok in RESULT_TOKENS:
            result = tok
            continue
        if _MOVENUM_RE.match(tok) or _NAG_RE.match(tok):
            continue
        # "1.e4" style glued move numbers
        glued = re.match(r"^(\d+)\.+(\S+)$", tok)
        if glued:
            tok = glued.group(2)
        tok = _CASTLE_FIX.get(tok, tok)
        if tok:
            sans.append(tok)
    return sans, result


def _replay(sans: list[str], initial_fen: str) -> tuple[tuple[Move, ...], tuple[str, ...]]:
    pos = parse_fen(initial_fen)
    moves: list[Move] = []
    normalized: list[str] = []
    for k, san in enumerate(sans, start=1):
        try:
            m = parse_san(pos, san)
        except SanError as exc:
            raise _ReplayError(k, str(exc)) from exc
        moves.append(m)
        normalized.append(san)
        pos = _apply_unchecked(pos, m)
    return tuple(moves), tuple(normalized)


class _ReplayError(Exception):
    def __init__(self, ply: int, message: str):
        super().__init__(message)
        self.ply = ply


def parse_pgn_stream(
    stream: Union[bytes, io.IOBase],
    *,
    source_class: SourceClass = SourceClass.HUMAN,
) -> Iterator[Union[GameRecord, PgnGameError]]:
    """Yield GameRecords (or recoverable PgnGameError items) in file order.

    Input is treated as UTF-8 with lossy fallback for stray Latin-1 bytes.
    """
    if isinstance(stream, bytes):
        data = stream
    else:
        data = stream.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    text = data.decode("utf-8", errors="replace")

    for index, (headers, movetext) in enumerate(_split_raw_games(text)):
        try:
            sans, result_token = _tokenize_movetext(movetext)
            initial = START_FEN
            if headers.get("FEN") and headers.get("SetUp", "1") == "1":
                initial = headers["FEN"]
            moves, norm = _replay(sans, initial)
        except _ReplayError as exc:
            yield PgnGameError(index, exc.ply, str(exc))
            continue
        except Exception as exc:  # malformed FEN header, etc.
            yield PgnGameError(index, 0, str(exc))
            continue
        outcome = Outcome.from_token(headers.get("Result", result_token))
        yield GameRecord(moves, norm, headers, source_class, outcome, initial)


def parse_pgn_file(
    path: Union[str, Path], *, source_class: SourceClass = SourceClass.HUMAN
) -> Iterator[Union[GameRecord, PgnGameError]]:
    with open(path, "rb") as fh:
        yield from parse_pgn_stream(fh, source_class=source_class)


# ---------------------------------------------------------------------------
# Classification


def elo_bin(record: GameRecord, width: int) -> Optional[int]:
    """floor(mean of available Elos / width) * width, None without any Elo."""
    elos = [e for e in (record.elo("White"), record.elo("Black")) if e is not None]
    if not elos:
        return None
    return int((sum(elos) / len(elos)) // width * width)


def classify(record: GameRecord, spec: CorpusSpec) -> tuple[bool, Optional[int]]:
    """Elo-filter verdict and bin for a parsed game."""
    white, black = record.elo("White"), record.elo("Black")
    if spec.elo_filter is not None:
        lo, hi = spec.elo_filter
        present = [e for e in (white, black) if e is not None]
        if not present:
            return False, None
        if spec.require_both_elos and (white is None or black is None):
            return False, None
        if any(not lo <= e <= hi for e in present):
            return False, elo_bin(record, spec.bin_width)
    elif spec.require_both_elos and (white is None or black is None):
        return False, None
    return True, elo_bin(record, spec.bin_width)


def is_variant_game(record: GameRecord) -> bool:
    variant = record.headers.get("Variant", "Standard").strip().lower()
    return variant not in ("", "standard", "normal")


@dataclass(frozen=True)
class ClassifiedGame:
    game_id: str
    record: GameRecord
    elo_bin: Optional[int]


def _ingest_one_file(path: str, spec: CorpusSpec) -> tuple[list[ClassifiedGame], IngestReport, list[PgnGameError]]:
    report = IngestReport()
    kept: list[ClassifiedGame] = []
    errors: list[PgnGameError] = []
    stem = Path(path).stem
    for item in parse_pgn_file(path, source_class=spec.class_label):
        report.games_read += 1
        if isinstance(item, PgnGameError):
            errors.append(item)
            report.skip("parse-error")
            continue
        if is_variant_game(item):
            report.skip("variant")
            continue
        if len(item) < 2:
            report.skip("too-short")
            continue
        ok, bin_ = classify(item, spec)
        if not ok:
            report.skip("elo-filter")
            continue
        report.games_kept += 1
        kept.append(ClassifiedGame(f"{stem}:{report.games_read - 1}", item, bin_))
    return kept, report, errors


def ingest_corpus(
    spec: CorpusSpec, *, workers: int = 1
) -> tuple[list[ClassifiedGame], IngestReport, list[PgnGameError]]:
    """Parse and classify every file of a corpus spec.

    The merged kept-list order is (file order, game order) regardless of
    worker scheduling; max_games truncates after the merge.
    """
    per_file: list[tuple[list[ClassifiedGame], IngestReport, list[PgnGameError]]]
    if workers > 1 and len(spec.paths) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_file = list(pool.map(_ingest_one_file, spec.paths, [spec] * len(spec.paths)))
    else:
        per_file = [_ingest_one_file(p, spec) for p in spec.paths]

    kept: list[ClassifiedGame] = []
    report = IngestReport()
    errors: list[PgnGameError] = []
    for file_kept, file_report, file_errors in per_file:
        kept.extend(file_kept)
        report = report.merged_with(file_report)
        errors.extend(file_errors)
    if spec.max_games is not None and len(kept) > spec.max_games:
        dropped = len(kept) - spec.max_games
        kept = kept[: spec.max_games]
        report.games_kept -= dropped
        for _ in range(dropped):
            report.skip("max-games")
    return kept, report, errors


# ---------------------------------------------------------------------------
# PGN writing (used by the game synthesizers)

_ROSTER = ("Event", "Site", "Date", "Round", "White", "Black", "Result")


def write_game_pgn(
    headers: dict[str, str],
    sans: Iterable[str],
    result: str,
    *,
    comments: Optional[dict[int, str]] = None,
) -> str:
    """Render one game; `comments` maps 1-based ply -> brace comment."""
    hdrs = dict(headers)
    hdrs.setdefault("Result", result)
    lines = []
    for key in _ROSTER:
        if key in hdrs:
            lines.append(f'[{key} "{hdrs[key]}"]')
    for key in sorted(k for k in hdrs if k not in _ROSTER):
        lines.append(f'[{key} "{hdrs[key]}"]')
    tokens = []
    for k, san in enumerate(sans, start=1):
        if k % 2 == 1:
            tokens.append(f"{(k + 1) // 2}.")
        tokens.append(san)
        if comments and k in comments:
            tokens.append("{" + comments[k] + "}")
    tokens.append(result)
    body = textwrap.fill(" ".join(tokens), width=80)
    return "\n".join(lines) + "\n\n" + body + "\n"
