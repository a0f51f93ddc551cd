"""Complete legal-move enumeration with counting utilities.

Jump enumeration is a depth-first expansion over segments in the fixed
direction order NW, N, NE, W, E, SW, S, SE, emitting every prefix that
ends on the board (stopping mid-jump is always allowed) before its
continuations, so the listing is lexicographic by path and fully
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Coord,
    Direction,
    DIRECTIONS,
    Jump,
    JumpSegment,
    JumpTrace,
    Move,
    Outcome,
    PhutballError,
    Place,
    Position,
    Role,
    legal_placements,
    outcome_of,
    _require_ongoing,
)

#: Hard ceiling on enumerated jump paths per position; exceeding it is an
#: error, never a silent truncation.
DEFAULT_JUMP_CAP = 10**6

#: Ceiling on distinct (ball, removed-chaps) states in the existence search.
DEFAULT_STATE_CAP = 500_000


class JumpCapExceeded(PhutballError):
    kind = "jump-cap-exceeded"


class JumpSearchExceeded(PhutballError):
    kind = "jump-search-exceeded"


@dataclass(frozen=True)
class JumpRecord:
    """One enumerated jump: its path, full trace, and resulting outcome."""

    path: tuple[Direction, ...]
    trace: JumpTrace
    outcome: Outcome


@dataclass(frozen=True)
class MoveList:
    placements: frozenset[Coord]
    jumps: tuple[JumpRecord, ...]

    def __len__(self) -> int:
        return len(self.placements) + len(self.jumps)


def legal_jumps(pos: Position, cap: int = DEFAULT_JUMP_CAP) -> list[JumpRecord]:
    """Enumerate every legal jump path from the position.

    Paths ending in a goalline exit are terminal; paths whose next segment
    would cross a sideline are simply not extended that way. Enumeration
    terminates because every segment removes at least one chap.
    """
    _require_ongoing(pos)
    geom = pos.geometry
    out: list[JumpRecord] = []
    chaps = set(pos.chaps)

    def emit(path, segments, exit_side, landing_row):
        if len(out) >= cap:
            raise JumpCapExceeded(f"more than {cap} jump paths from one position")
        trace = JumpTrace(pos.ball, tuple(segments), exit_side)
        if exit_side == "top":
            outcome = Outcome.ALFRED_WINS
        elif exit_side == "bottom":
            outcome = Outcome.BETTY_WINS
        elif landing_row == geom.rows:
            outcome = Outcome.ALFRED_WINS
        elif landing_row == 1:
            outcome = Outcome.BETTY_WINS
        else:
            outcome = Outcome.ONGOING
        out.append(JumpRecord(tuple(path), trace, outcome))

    def expand(cur: Coord, path: list[Direction], segments: list[JumpSegment]):
        for direction in DIRECTIONS:
            dc, dr = direction.value
            probe = (cur[0] + dc, cur[1] + dr)
            if probe not in chaps:
                continue
            removed = []
            while probe in chaps:
                removed.append(probe)
                probe = (probe[0] + dc, probe[1] + dr)
            landing = probe
            row_ok = 1 <= landing[1] <= geom.rows
            col_ok = 1 <= landing[0] <= geom.cols
            if row_ok and not col_ok:
                continue  # sideline: this extension is illegal
            path.append(direction)
            for coord in removed:
                chaps.discard(coord)
            if row_ok:
                segments.append(JumpSegment(direction, tuple(removed), landing))
                emit(path, segments, None, landing[1])
                expand(landing, path, segments)
            else:
                side = "top" if landing[1] > geom.rows else "bottom"
                segments.append(JumpSegment(direction, tuple(removed), None))
                emit(path, segments, side, None)
            segments.pop()
            chaps.update(removed)
            path.pop()

    expand(pos.ball, [], [])
    return out


def legal_moves(pos: Position, cap: int = DEFAULT_JUMP_CAP) -> MoveList:
    return MoveList(legal_placements(pos), tuple(legal_jumps(pos, cap)))


def ordered_moves(pos: Position, cap: int = DEFAULT_JUMP_CAP) -> list[Move]:
    """Canonical move order: placements by coordinate, then jumps by path."""
    moves: list[Move] = [Place(c) for c in sorted(legal_placements(pos))]
    moves.extend(Jump(rec.path) for rec in legal_jumps(pos, cap))
    return moves


def winning_jumps(pos: Position, winner: Role) -> list[tuple[Direction, ...]]:
    """Paths of every legal jump whose outcome wins for ``winner``.

    Independent of whose turn it is: a shot exists for a player even when
    the opponent is the one to move.
    """
    target = Outcome.win(winner)
    return [rec.path for rec in legal_jumps(pos) if rec.outcome is target]


# Goal-ward direction orders make positive existence queries terminate in a
# handful of states on the dense boards, where full path enumeration blows
# up combinatorially.
_SEEK_ORDER = {
    Role.ALFRED: (
        Direction.N, Direction.NE, Direction.NW, Direction.E,
        Direction.W, Direction.SE, Direction.SW, Direction.S,
    ),
    Role.BETTY: (
        Direction.S, Direction.SE, Direction.SW, Direction.E,
        Direction.W, Direction.NE, Direction.NW, Direction.N,
    ),
}


def find_winning_jump(
    pos: Position, winner: Role, state_cap: int = DEFAULT_STATE_CAP
) -> tuple[Direction, ...] | None:
    """A winning jump path for ``winner``, or None; goal-directed search.

    Decides the same question as ``bool(winning_jumps(pos, winner))`` but
    explores the jump graph once per (ball, removed-chaps) state, which
    stays tractable on positions whose full path enumeration explodes, and
    probes goal-ward directions first so positive answers come fast. The
    state graph is acyclic because every segment removes at least one
    chap. Exceeding ``state_cap`` distinct states raises, never lies. The
    returned path is deterministic but not necessarily the lexicographic
    least by the enumeration order.
    """
    _require_ongoing(pos)
    geom = pos.geometry
    rows, cols = geom.rows, geom.cols
    want_top = winner is Role.ALFRED
    goal_row = rows if want_top else 1
    chaps0 = pos.chaps
    order = _SEEK_ORDER[winner]
    # state -> winning continuation from the state, or None
    memo: dict[tuple[Coord, frozenset], tuple[Direction, ...] | None] = {}

    def search(ball: Coord, removed: frozenset):
        key = (ball, removed)
        if key in memo:
            return memo[key]
        if len(memo) >= state_cap:
            raise JumpSearchExceeded(
                f"more than {state_cap} states in the winning-jump search"
            )
        memo[key] = None  # placeholder; the graph is acyclic
        result = None
        for direction in order:
            dc, dr = direction.value
            probe = (ball[0] + dc, ball[1] + dr)
            if probe not in chaps0 or probe in removed:
                continue
            run = []
            while probe in chaps0 and probe not in removed:
                run.append(probe)
                probe = (probe[0] + dc, probe[1] + dr)
            landing = probe
            if 1 <= landing[1] <= rows:
                if not 1 <= landing[0] <= cols:
                    continue  # sideline
                if landing[1] == goal_row:
                    result = (direction,)
                    break
                tail = search(landing, removed.union(run))
                if tail is not None:
                    result = (direction,) + tail
                    break
            elif (landing[1] > rows) == want_top:
                result = (direction,)
                break
        memo[key] = result
        return result

    return search(pos.ball, frozenset())


def has_winning_jump(
    pos: Position, winner: Role, state_cap: int = DEFAULT_STATE_CAP
) -> bool:
    """Whether any legal jump wins for ``winner``; see find_winning_jump."""
    return find_winning_jump(pos, winner, state_cap) is not None


def jump_states(pos: Position, state_cap: int = DEFAULT_STATE_CAP):
    """Yield every distinct jump end-state reachable from the position.

    Yields ``(path, landing, removed, exit_side)`` tuples in depth-first
    canonical direction order; ``landing`` is None exactly when the state
    is a goalline exit. One yield per distinct (landing, removed) state,
    with the first path that reaches it: the outcome of stopping there and
    the resulting board depend only on the state, never on the path, so
    predicates quantifying over all jumps may quantify over these states.
    """
    _require_ongoing(pos)
    geom = pos.geometry
    rows, cols = geom.rows, geom.cols
    chaps0 = pos.chaps
    seen: set = set()

    def walk(ball: Coord, removed: frozenset, path: tuple[Direction, ...]):
        for direction in DIRECTIONS:
            dc, dr = direction.value
            probe = (ball[0] + dc, ball[1] + dr)
            if probe not in chaps0 or probe in removed:
                continue
            run = []
            while probe in chaps0 and probe not in removed:
                run.append(probe)
                probe = (probe[0] + dc, probe[1] + dr)
            landing = probe
            row_ok = 1 <= landing[1] <= rows
            if row_ok and not 1 <= landing[0] <= cols:
                continue  # sideline
            new_removed = removed.union(run)
            new_path = path + (direction,)
            if not row_ok:
                side = "top" if landing[1] > rows else "bottom"
                key = (side, new_removed)
                if key not in seen:
                    seen.add(key)
                    yield new_path, None, new_removed, side
                continue
            key = (landing, new_removed)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > state_cap:
                raise JumpSearchExceeded(
                    f"more than {state_cap} states in the jump-state walk"
                )
            yield new_path, landing, new_removed, None
            yield from walk(landing, new_removed, new_path)

    yield from walk(pos.ball, frozenset(), ())


def move_census(pos: Position, plies: int) -> int:
    """Count legal move sequences of exactly ``plies`` plies.

    Sequences that reach a terminal outcome early are counted once at
    their terminal length: terminal nodes contribute 1.
    """
    if plies < 1:
        raise ValueError("plies must be >= 1")

    def walk(p: Position, depth: int) -> int:
        if outcome_of(p).terminal:
            return 1
        if depth == 0:
            return 1
        total = 0
        for coord in legal_placements(p):
            child = Position(p.geometry, p.ball, p.chaps | {coord}, p.to_move.opposite)
            total += walk(child, depth - 1)
        for rec in legal_jumps(p):
            if rec.outcome.terminal:
                total += 1
                continue
            chaps = p.chaps.difference(rec.trace.removed)
            end = rec.trace.end
            assert end is not None
            child = Position(p.geometry, end, chaps, p.to_move.opposite)
            total += walk(child, depth - 1)
        return total

    return walk(pos, plies)
