"""Exact Phutball rules: geometry, positions, jump tracing, and outcomes.

Coordinates are ``(col, row)`` pairs, both 1-based, with row 1 the bottom
row. Alfred wins when the ball crosses the top row or rests on it at the
end of a turn; Betty wins symmetrically at the bottom. The left and right
edges are sidelines: a jump segment may not land beyond them. The corners
belong to the goallines, so a diagonal exit whose row leaves the board is
a goal even when the column leaves the board too.

Positions are immutable values and every operation here is a pure
function, so the module is safe to use from concurrent code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

Coord = tuple[int, int]

MAX_ROWS = 64
MAX_COLS = 26  # column letters a..z

_ZOBRIST_SEED = 0x9E3779B97F4A7C15


# ---------------------------------------------------------------------------
# Errors


class PhutballError(Exception):
    """Base class for rule and format violations.

    ``kind`` is a stable machine-readable tag used by scripts, the CLI and
    the HTTP service.
    """

    kind = "error"


class NoChapToJump(PhutballError):
    """A jump segment starts with no adjacent chap in its direction."""

    kind = "no-chap"


class SidelineExit(PhutballError):
    """A jump segment would land beyond a sideline."""

    kind = "sideline-exit"


class SegmentAfterExit(PhutballError):
    """A jump path continues after the ball already left over a goalline."""

    kind = "after-exit"


class IllegalPlacement(PhutballError):
    kind = "illegal-placement"


class TerminalPosition(PhutballError):
    """The game is over; only rot180 and position_hash accept this state."""

    kind = "terminal-position"


# ---------------------------------------------------------------------------
# Basic enums


class Direction(Enum):
    """The eight jump directions; N increases the row, E the column."""

    NW = (-1, 1)
    N = (0, 1)
    NE = (1, 1)
    W = (-1, 0)
    E = (1, 0)
    SW = (-1, -1)
    S = (0, -1)
    SE = (1, -1)

    @property
    def dcol(self) -> int:
        return self.value[0]

    @property
    def drow(self) -> int:
        return self.value[1]

    @property
    def opposite(self) -> "Direction":
        return Direction((-self.value[0], -self.value[1]))


#: Canonical enumeration order used everywhere moves are listed.
DIRECTIONS: tuple[Direction, ...] = tuple(Direction)


class Role(Enum):
    ALFRED = "A"  # aims for the top row, moves first in the shipped corpus
    BETTY = "B"   # aims for the bottom row

    @property
    def opposite(self) -> "Role":
        return Role.BETTY if self is Role.ALFRED else Role.ALFRED


class Outcome(Enum):
    ONGOING = "ongoing"
    ALFRED_WINS = "A"
    BETTY_WINS = "B"

    @staticmethod
    def win(role: Role) -> "Outcome":
        return Outcome.ALFRED_WINS if role is Role.ALFRED else Outcome.BETTY_WINS

    @property
    def winner(self) -> Role | None:
        if self is Outcome.ALFRED_WINS:
            return Role.ALFRED
        if self is Outcome.BETTY_WINS:
            return Role.BETTY
        return None

    @property
    def terminal(self) -> bool:
        return self is not Outcome.ONGOING


# ---------------------------------------------------------------------------
# Geometry and position


@dataclass(frozen=True)
class Geometry:
    """Board dimensions: ``rows`` x ``cols`` grid points."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if not (2 <= self.rows <= MAX_ROWS):
            raise ValueError(f"rows must be in 2..{MAX_ROWS}, got {self.rows}")
        if not (2 <= self.cols <= MAX_COLS):
            raise ValueError(f"cols must be in 2..{MAX_COLS}, got {self.cols}")

    def on_board(self, coord: Coord) -> bool:
        col, row = coord
        return 1 <= col <= self.cols and 1 <= row <= self.rows

    def coords(self) -> Iterator[Coord]:
        """All grid points in (col, row) sorted order."""
        for col in range(1, self.cols + 1):
            for row in range(1, self.rows + 1):
                yield (col, row)

    def rot180(self, coord: Coord) -> Coord:
        col, row = coord
        return (self.cols + 1 - col, self.rows + 1 - row)


@dataclass(frozen=True)
class Position:
    """Full game state: geometry, ball, chap set and side to move."""

    geometry: Geometry
    ball: Coord
    chaps: frozenset[Coord]
    to_move: Role

    def __post_init__(self) -> None:
        object.__setattr__(self, "chaps", frozenset(self.chaps))
        if not self.geometry.on_board(self.ball):
            raise ValueError(f"ball {self.ball} is off the board")
        for chap in self.chaps:
            if not self.geometry.on_board(chap):
                raise ValueError(f"chap {chap} is off the board")
        if self.ball in self.chaps:
            raise ValueError(f"ball and chap share the point {self.ball}")

    def occupied(self, coord: Coord) -> bool:
        return coord == self.ball or coord in self.chaps


def make_position(
    rows: int,
    cols: int,
    ball: Coord,
    chaps: Iterable[Coord] = (),
    to_move: Role = Role.ALFRED,
) -> Position:
    return Position(Geometry(rows, cols), ball, frozenset(chaps), to_move)


# ---------------------------------------------------------------------------
# Moves


@dataclass(frozen=True)
class Place:
    at: Coord


@dataclass(frozen=True)
class Jump:
    path: tuple[Direction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", tuple(self.path))
        if not self.path:
            raise ValueError("a jump path must be non-empty")


Move = Place | Jump


# ---------------------------------------------------------------------------
# Jump tracing


@dataclass(frozen=True)
class JumpSegment:
    """One hop: the chap run removed and where the ball came down.

    ``landing`` is None when the segment carried the ball over a goalline.
    """

    direction: Direction
    removed: tuple[Coord, ...]
    landing: Coord | None


@dataclass(frozen=True)
class JumpTrace:
    start: Coord
    segments: tuple[JumpSegment, ...]
    exit_side: str | None  # "top" / "bottom" when the ball left the board

    @property
    def removed(self) -> tuple[Coord, ...]:
        out: list[Coord] = []
        for seg in self.segments:
            out.extend(seg.removed)
        return tuple(out)

    @property
    def end(self) -> Coord | None:
        """Final on-board square, or None when the ball exited."""
        if self.exit_side is not None:
            return None
        return self.segments[-1].landing

    @property
    def last_on_board(self) -> Coord:
        """The last square the ball occupied while still on the board."""
        for seg in reversed(self.segments):
            if seg.landing is not None:
                return seg.landing
        return self.start


def outcome_of(pos: Position) -> Outcome:
    """Terminal status of a position: decided by the ball's row alone."""
    _, row = pos.ball
    if row == pos.geometry.rows:
        return Outcome.ALFRED_WINS
    if row == 1:
        return Outcome.BETTY_WINS
    return Outcome.ONGOING


def _require_ongoing(pos: Position) -> None:
    if outcome_of(pos).terminal:
        raise TerminalPosition("the game is already decided")


def trace_jump(pos: Position, path: Iterable[Direction]) -> JumpTrace:
    """Simulate a jump path segment by segment.

    Each segment removes the maximal contiguous chap run ahead of the ball
    and lands on the first non-chap point; jumping a strict prefix of a run
    is impossible. Removal is immediate, so later segments see earlier
    removals. A landing whose row leaves the board ends the move as a
    goalline exit (corners included); a landing whose column leaves the
    board while the row stays on it is a sideline error.
    """
    path = tuple(path)
    if not path:
        raise ValueError("a jump path must be non-empty")
    _require_ongoing(pos)

    geom = pos.geometry
    chaps = set(pos.chaps)
    cur = pos.ball
    segments: list[JumpSegment] = []
    exit_side: str | None = None

    for direction in path:
        if exit_side is not None:
            raise SegmentAfterExit(
                f"path continues after the ball exited over the {exit_side}"
            )
        dc, dr = direction.value
        probe = (cur[0] + dc, cur[1] + dr)
        if probe not in chaps:
            raise NoChapToJump(f"no chap adjacent to {cur} in direction {direction.name}")
        removed: list[Coord] = []
        while probe in chaps:
            removed.append(probe)
            probe = (probe[0] + dc, probe[1] + dr)
        landing = probe
        for coord in removed:
            chaps.discard(coord)
        if geom.on_board(landing):
            segments.append(JumpSegment(direction, tuple(removed), landing))
            cur = landing
        elif landing[1] > geom.rows:
            segments.append(JumpSegment(direction, tuple(removed), None))
            exit_side = "top"
        elif landing[1] < 1:
            segments.append(JumpSegment(direction, tuple(removed), None))
            exit_side = "bottom"
        else:
            raise SidelineExit(
                f"segment {direction.name} from {cur} lands beyond a sideline at {landing}"
            )

    return JumpTrace(pos.ball, tuple(segments), exit_side)


def legal_placements(pos: Position) -> frozenset[Coord]:
    """Every on-board point that holds neither a chap nor the ball."""
    _require_ongoing(pos)
    return frozenset(
        coord for coord in pos.geometry.coords() if not pos.occupied(coord)
    )


def apply_move(pos: Position, move: Move) -> tuple[Position, Outcome]:
    """Apply a placement or jump; returns the new position and its outcome.

    Placements never end the game. After a jump the outcome follows from
    the ball's final location: an exit wins for the goalline's owner, a
    ball resting in the top or bottom row wins for Alfred or Betty
    regardless of who moved. ``to_move`` flips either way; terminal
    positions are frozen by ``outcome_of`` checks in every operation.

    For a goalline exit the returned position keeps the ball on the last
    on-board square it occupied, since a position cannot represent an
    off-board ball; the outcome carries the result.
    """
    _require_ongoing(pos)
    if isinstance(move, Place):
        at = move.at
        if not pos.geometry.on_board(at):
            raise IllegalPlacement(f"{at} is off the board")
        if at in pos.chaps:
            raise IllegalPlacement(f"{at} already holds a chap")
        if at == pos.ball:
            raise IllegalPlacement(f"{at} holds the ball")
        nxt = Position(pos.geometry, pos.ball, pos.chaps | {at}, pos.to_move.opposite)
        return nxt, Outcome.ONGOING

    trace = trace_jump(pos, move.path)
    chaps = pos.chaps.difference(trace.removed)
    ball = trace.last_on_board if trace.exit_side is not None else trace.end
    assert ball is not None
    nxt = Position(pos.geometry, ball, chaps, pos.to_move.opposite)
    if trace.exit_side == "top":
        return nxt, Outcome.ALFRED_WINS
    if trace.exit_side == "bottom":
        return nxt, Outcome.BETTY_WINS
    return nxt, outcome_of(nxt)


def rot180(pos: Position) -> Position:
    """Rotate the board half a turn and swap the side to move.

    Involutive; maps every tactical property of one role onto the other.
    Accepts terminal positions.
    """
    geom = pos.geometry
    return Position(
        geom,
        geom.rot180(pos.ball),
        frozenset(geom.rot180(c) for c in pos.chaps),
        pos.to_move.opposite,
    )


def rot180_move(pos_or_geom: Position | Geometry, move: Move) -> Move:
    """Map a move through the half-turn rotation of the board."""
    geom = pos_or_geom.geometry if isinstance(pos_or_geom, Position) else pos_or_geom
    if isinstance(move, Place):
        return Place(geom.rot180(move.at))
    return Jump(tuple(d.opposite for d in move.path))


# ---------------------------------------------------------------------------
# Hashing

_zobrist_cache: dict[tuple[int, int], tuple[dict[Coord, int], dict[Coord, int], int]] = {}


def _zobrist(geom: Geometry) -> tuple[dict[Coord, int], dict[Coord, int], int]:
    key = (geom.rows, geom.cols)
    tables = _zobrist_cache.get(key)
    if tables is None:
        rng = random.Random(_ZOBRIST_SEED ^ (geom.rows << 8) ^ geom.cols)
        chap_keys = {coord: rng.getrandbits(64) for coord in geom.coords()}
        ball_keys = {coord: rng.getrandbits(64) for coord in geom.coords()}
        side_key = rng.getrandbits(64)
        tables = (chap_keys, ball_keys, side_key)
        _zobrist_cache[key] = tables
    return tables


def position_hash(pos: Position) -> int:
    """Deterministic 64-bit digest of a position.

    Built from fixed-seed Zobrist keys, so it is stable across processes
    and supports incremental updates by XOR-ing single-point keys. Equal
    positions always collide; unequal ones may, so correctness-critical
    callers (the solver memo) key containers on the full position value,
    which verifies equality on digest hits.
    """
    chap_keys, ball_keys, side_key = _zobrist(pos.geometry)
    digest = ball_keys[pos.ball]
    for chap in pos.chaps:
        digest ^= chap_keys[chap]
    if pos.to_move is Role.BETTY:
        digest ^= side_key
    return digest


def hash_toggle_chap(pos_or_geom: Position | Geometry, digest: int, at: Coord) -> int:
    """Incremental digest update for one chap added or removed."""
    geom = pos_or_geom.geometry if isinstance(pos_or_geom, Position) else pos_or_geom
    return digest ^ _zobrist(geom)[0][at]


def hash_move_ball(
    pos_or_geom: Position | Geometry, digest: int, src: Coord, dst: Coord
) -> int:
    """Incremental digest update for the ball relocating."""
    geom = pos_or_geom.geometry if isinstance(pos_or_geom, Position) else pos_or_geom
    ball_keys = _zobrist(geom)[1]
    return digest ^ ball_keys[src] ^ ball_keys[dst]


def hash_flip_side(pos_or_geom: Position | Geometry, digest: int) -> int:
    geom = pos_or_geom.geometry if isinstance(pos_or_geom, Position) else pos_or_geom
    return digest ^ _zobrist(geom)[2]
