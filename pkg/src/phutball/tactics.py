"""Tactical predicates: shots, tackles, jots, and a bounded forced-win search.

A *shot* is a winning jump available to a player regardless of whose turn
it is. A shot is *untackleable* when every defensive chap placement leaves
the attacker some winning jump, and *unjottable* when every defensive jump
either still leaves the attacker a shot or itself ends the game in the
attacker's favour. A shot that is both is a win in one.

Annotation symbols, strongest first: ``#`` (win in one), ``!!``
(untackleable), ``*!`` (unjottable), ``!`` (plain shot), ``none``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Coord,
    Direction,
    Jump,
    Move,
    Outcome,
    PhutballError,
    Place,
    Position,
    Role,
    apply_move,
    legal_placements,
    outcome_of,
)
from .movegen import (
    JumpCapExceeded,
    find_winning_jump,
    has_winning_jump,
    jump_states,
    legal_jumps,
    ordered_moves,
    winning_jumps,
)

#: Path budget for exhaustive witness listings before the existence search
#: takes over with a single witness.
WITNESS_ENUM_CAP = 50_000

ANNOTATIONS = ("none", "!", "*!", "!!", "#")

#: Default node budget for win_within; exceeding it raises, never lies.
DEFAULT_NODE_CAP = 5 * 10**7


class BudgetExceeded(PhutballError):
    kind = "budget-exceeded"


class TerminalAfterMove(PhutballError):
    """Annotation is undefined for a move that already decided the game."""

    kind = "terminal-after-move"


@dataclass(frozen=True)
class TacticalReport:
    attacker: Role
    shot_witnesses: tuple[tuple[Direction, ...], ...]
    unjottable: bool
    untackleable: bool
    win_in_one: bool
    annotation: str

    @property
    def has_shot(self) -> bool:
        return bool(self.shot_witnesses)


def has_shot(pos: Position, attacker: Role) -> tuple[bool, list[tuple[Direction, ...]]]:
    """Whether ``attacker`` has a winning jump, plus witness paths.

    Normally every winning jump is listed, in enumeration order. On dense
    positions where full path enumeration explodes, a single witness from
    the goal-directed search is returned instead.
    """
    try:
        paths = [
            rec.path
            for rec in legal_jumps(pos, cap=WITNESS_ENUM_CAP)
            if rec.outcome is Outcome.win(attacker)
        ]
        return bool(paths), paths
    except JumpCapExceeded:
        witness = find_winning_jump(pos, attacker)
        return witness is not None, [witness] if witness else []


def _place(pos: Position, at: Coord) -> Position:
    return Position(pos.geometry, pos.ball, pos.chaps | {at}, pos.to_move.opposite)


def is_untackleable(pos: Position, attacker: Role) -> tuple[bool, Coord | None]:
    """True when every defensive placement still leaves the attacker a shot.

    Returns the refuting placement (a tackle) when one exists; with a
    deterministic scan order the first refutation in coordinate order is
    reported.
    """
    if not has_winning_jump(pos, attacker):
        raise ValueError("is_untackleable requires an existing shot")
    for coord in sorted(legal_placements(pos)):
        if not has_winning_jump(_place(pos, coord), attacker):
            return False, coord
    return True, None


def is_unjottable(
    pos: Position, attacker: Role
) -> tuple[bool, tuple[Direction, ...] | None]:
    """True when no defensive jump escapes the threat.

    A defender jump escapes when it neither ends the game in the
    attacker's favour nor leaves the attacker a shot; a jump that wins for
    the defender outright is an escape. Returns the refuting jot if any.
    """
    if not has_winning_jump(pos, attacker):
        raise ValueError("is_unjottable requires an existing shot")
    defender = attacker.opposite
    rows = pos.geometry.rows
    for path, landing, removed, exit_side in jump_states(pos):
        if exit_side is not None:
            winner = Role.ALFRED if exit_side == "top" else Role.BETTY
            if winner is defender:
                return False, path  # the defender wins outright
            continue
        if landing[1] == rows or landing[1] == 1:
            winner = Role.ALFRED if landing[1] == rows else Role.BETTY
            if winner is defender:
                return False, path
            continue  # own goal as a stop; continuations were explored
        after = Position(pos.geometry, landing, pos.chaps - removed, attacker)
        if not has_winning_jump(after, attacker):
            return False, path
    return True, None


def is_win_in_one(pos: Position, attacker: Role) -> bool:
    """Shot plus unjottable plus untackleable; the defender cannot cope."""
    if not has_winning_jump(pos, attacker):
        return False
    unjottable, _ = is_unjottable(pos, attacker)
    if not unjottable:
        return False
    untackleable, _ = is_untackleable(pos, attacker)
    return untackleable


def report(pos: Position, attacker: Role) -> TacticalReport:
    """Full tactical truth table for ``attacker`` in ``pos``."""
    ok, witnesses = has_shot(pos, attacker)
    if not ok:
        return TacticalReport(attacker, (), False, False, False, "none")
    unjottable, _ = is_unjottable(pos, attacker)
    untackleable, _ = is_untackleable(pos, attacker)
    win1 = unjottable and untackleable
    if win1:
        symbol = "#"
    elif untackleable:
        symbol = "!!"
    elif unjottable:
        symbol = "*!"
    else:
        symbol = "!"
    return TacticalReport(
        attacker, tuple(witnesses), unjottable, untackleable, win1, symbol
    )


def annotate(pos_before: Position, move: Move) -> TacticalReport:
    """Evaluate the mover's tactical standing right after its move.

    The strongest applicable symbol is emitted. Undefined (an error) when
    the move itself ends the game.
    """
    mover = pos_before.to_move
    after, outcome = apply_move(pos_before, move)
    if outcome.terminal:
        raise TerminalAfterMove("the move already decided the game")
    return report(after, mover)


# ---------------------------------------------------------------------------
# Bounded forced-win search


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap: int) -> None:
        self.left = cap

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("win_within node budget exhausted")


def win_within(
    pos: Position, winner: Role, plies: int, node_cap: int = DEFAULT_NODE_CAP
) -> bool:
    """AND/OR search: can ``winner`` force a win within ``plies`` plies?

    When the side to move is the winner, some move must win immediately or
    lead to a forced win one ply shorter; otherwise every move must avoid
    losing outright and still leave a forced win. Memoized on the full
    position value (digest-hashed, equality-verified), so the result does
    not depend on visit order.
    """
    if plies < 0:
        raise ValueError("plies must be >= 0")
    budget = _Budget(node_cap)
    memo: dict[tuple[Position, int], bool] = {}

    def search(p: Position, depth: int) -> bool:
        outcome = outcome_of(p)
        if outcome.terminal:
            return outcome.winner is winner
        if depth == 0:
            return False
        key = (p, depth)
        hit = memo.get(key)
        if hit is not None:
            return hit
        budget.spend()
        attacking = p.to_move is winner
        result = not attacking
        for move in ordered_moves(p):
            child, outcome = apply_move(p, move)
            if attacking:
                if outcome.winner is winner or (
                    not outcome.terminal and search(child, depth - 1)
                ):
                    result = True
                    break
            else:
                if outcome.winner is winner.opposite:
                    result = False
                    break
                if outcome.winner is winner:
                    continue
                if not search(child, depth - 1):
                    result = False
                    break
        memo[key] = result
        return result

    return search(pos, plies)


def principal_line(
    pos: Position, winner: Role, plies: int, node_cap: int = DEFAULT_NODE_CAP
) -> list[Move] | None:
    """A witness line for a successful win_within, else None.

    At the winner's turns the first winning move in canonical order is
    chosen; at the defender's turns the first legal move in canonical
    order is followed, which keeps the output deterministic.
    """
    if not win_within(pos, winner, plies, node_cap):
        return None
    line: list[Move] = []
    p, depth = pos, plies
    while not outcome_of(p).terminal:
        attacking = p.to_move is winner
        chosen = None
        for move in ordered_moves(p):
            child, outcome = apply_move(p, move)
            if attacking:
                if outcome.winner is winner or (
                    not outcome.terminal and win_within(child, winner, depth - 1, node_cap)
                ):
                    chosen = (move, child, outcome)
                    break
            else:
                chosen = (move, child, outcome)
                break
        assert chosen is not None
        move, child, outcome = chosen
        line.append(move)
        if outcome.terminal:
            break
        p, depth = child, depth - 1
    return line
