"""Textual formats: coordinates, moves, and position files.

Coordinates use chessboard notation (``a1`` is the bottom-left point).
Placements are written as a bare coordinate; jumps as direction tokens
joined by commas (``SE,N,NE``). The arrow glyphs are accepted on input as
aliases. Position files use a small line-oriented grammar with a
``%phutball 1`` header; ``#`` starts a comment anywhere.
"""

from __future__ import annotations

import re

from .board import (
    Coord,
    Direction,
    Geometry,
    Jump,
    Move,
    PhutballError,
    Place,
    Position,
    Role,
)

COLUMN_LETTERS = "abcdefghijklmnopqrstuvwxyz"

POSITION_HEADER = "%phutball 1"


class MalformedCoord(PhutballError):
    kind = "malformed-coord"


class OutOfRange(PhutballError):
    kind = "out-of-range"


class MalformedMove(PhutballError):
    kind = "malformed-move"


class UnknownDirectionToken(MalformedMove):
    kind = "unknown-direction"


class BadHeader(PhutballError):
    kind = "bad-header"


class DuplicateChap(PhutballError):
    kind = "duplicate-chap"


class BallOnChap(PhutballError):
    kind = "ball-on-chap"


_COORD_RE = re.compile(r"^([a-z])([1-9][0-9]*)$")

_ARROW_ALIASES = {
    "↖": "NW",  # ↖
    "↑": "N",   # ↑
    "↗": "NE",  # ↗
    "←": "W",   # ←
    "→": "E",   # →
    "↙": "SW",  # ↙
    "↓": "S",   # ↓
    "↘": "SE",  # ↘
}

_DIRECTION_TOKENS = {d.name: d for d in Direction}
_DIRECTION_TOKENS.update({glyph: Direction[name] for glyph, name in _ARROW_ALIASES.items()})


def parse_coord(text: str, geom: Geometry) -> Coord:
    m = _COORD_RE.match(text.strip())
    if not m:
        raise MalformedCoord(f"bad coordinate {text!r}")
    col = COLUMN_LETTERS.index(m.group(1)) + 1
    row = int(m.group(2))
    if col > geom.cols or row > geom.rows:
        raise OutOfRange(f"{text.strip()} is outside the {geom.rows}x{geom.cols} board")
    return (col, row)


def format_coord(coord: Coord) -> str:
    col, row = coord
    return f"{COLUMN_LETTERS[col - 1]}{row}"


def looks_like_coord(text: str) -> bool:
    return bool(_COORD_RE.match(text.strip()))


def parse_direction(token: str) -> Direction:
    direction = _DIRECTION_TOKENS.get(token)
    if direction is None:
        raise UnknownDirectionToken(f"unknown direction token {token!r}")
    return direction


def parse_jump_path(text: str) -> tuple[Direction, ...]:
    text = text.strip()
    # A run of bare arrow glyphs needs no separators.
    if text and all(ch in _ARROW_ALIASES for ch in text):
        return tuple(_DIRECTION_TOKENS[ch] for ch in text)
    parts = text.split(",")
    if any(not part.strip() for part in parts):
        raise MalformedMove(f"bad jump {text!r}")
    return tuple(parse_direction(part.strip()) for part in parts)


def parse_move(text: str, geom: Geometry) -> Move:
    text = text.strip()
    if not text:
        raise MalformedMove("empty move")
    if looks_like_coord(text):
        return Place(parse_coord(text, geom))
    return Jump(parse_jump_path(text))


def format_move(move: Move) -> str:
    if isinstance(move, Place):
        return format_coord(move.at)
    return ",".join(d.name for d in move.path)


# ---------------------------------------------------------------------------
# Position files


def strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def parse_position(text: str) -> Position:
    """Parse the canonical position-file grammar.

    Line 1 is ``%phutball 1``; then ``rows:``, ``cols:``, ``ball:``,
    ``to-move:`` (``A`` or ``B``) in any order, plus one or more ``chaps:``
    lines of space-separated coordinates. Both LF and CRLF are accepted.
    """
    lines = [strip_comment(raw).strip() for raw in text.replace("\r\n", "\n").split("\n")]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != POSITION_HEADER:
        raise BadHeader(f"position files must start with {POSITION_HEADER!r}")

    fields: dict[str, str] = {}
    chap_texts: list[str] = []
    for ln in lines[1:]:
        key, sep, value = ln.partition(":")
        if not sep:
            raise BadHeader(f"bad line {ln!r}")
        key = key.strip()
        value = value.strip()
        if key == "chaps":
            chap_texts.extend(value.split())
        elif key in ("rows", "cols", "ball", "to-move"):
            if key in fields:
                raise BadHeader(f"duplicate field {key!r}")
            fields[key] = value
        else:
            raise BadHeader(f"unknown field {key!r}")

    for required in ("rows", "cols", "ball", "to-move"):
        if required not in fields:
            raise BadHeader(f"missing field {required!r}")
    try:
        geom = Geometry(int(fields["rows"]), int(fields["cols"]))
    except ValueError as exc:
        raise BadHeader(str(exc)) from None
    if fields["to-move"] not in ("A", "B"):
        raise BadHeader(f"to-move must be A or B, got {fields['to-move']!r}")
    ball = parse_coord(fields["ball"], geom)

    chaps: set[Coord] = set()
    for chap_text in chap_texts:
        coord = parse_coord(chap_text, geom)
        if coord in chaps:
            raise DuplicateChap(f"chap {chap_text} listed twice")
        chaps.add(coord)
    if ball in chaps:
        raise BallOnChap(f"ball and chap share {fields['ball']}")

    return Position(geom, ball, frozenset(chaps), Role(fields["to-move"]))


def serialize_position(pos: Position) -> str:
    """Canonical serialization: sorted chaps, eight per line, LF endings."""
    lines = [
        POSITION_HEADER,
        f"rows: {pos.geometry.rows}",
        f"cols: {pos.geometry.cols}",
        f"ball: {format_coord(pos.ball)}",
        f"to-move: {pos.to_move.value}",
    ]
    chaps = [format_coord(c) for c in sorted(pos.chaps)]
    for i in range(0, len(chaps), 8):
        lines.append("chaps: " + " ".join(chaps[i : i + 8]))
    return "\n".join(lines) + "\n"
