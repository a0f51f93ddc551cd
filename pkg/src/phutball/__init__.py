"""Phutball rules engine, tactical analyzer, and proof-line verifier."""

from .board import (
    Coord,
    Direction,
    DIRECTIONS,
    Geometry,
    IllegalPlacement,
    Jump,
    JumpTrace,
    Move,
    NoChapToJump,
    Outcome,
    PhutballError,
    Place,
    Position,
    Role,
    SegmentAfterExit,
    SidelineExit,
    TerminalPosition,
    apply_move,
    legal_placements,
    make_position,
    outcome_of,
    position_hash,
    rot180,
    rot180_move,
    trace_jump,
)
from .movegen import (
    JumpRecord,
    MoveList,
    legal_jumps,
    legal_moves,
    move_census,
    ordered_moves,
    winning_jumps,
)
from .notation import (
    format_coord,
    format_move,
    parse_coord,
    parse_move,
    parse_position,
    serialize_position,
)
from .script import ProofScript, parse_script
from .tactics import (
    TacticalReport,
    annotate,
    has_shot,
    is_unjottable,
    is_untackleable,
    is_win_in_one,
    report,
    win_within,
)
from .verifier import VerificationReport, check_claim, run_script, verify_all

__version__ = "0.1.0"
