import pytest

from phutball import (
    Direction,
    Geometry,
    Jump,
    Place,
    Role,
    make_position,
    parse_position,
    serialize_position,
)
from phutball.notation import (
    BadHeader,
    BallOnChap,
    DuplicateChap,
    MalformedCoord,
    MalformedMove,
    OutOfRange,
    UnknownDirectionToken,
    format_coord,
    format_move,
    parse_coord,
    parse_jump_path,
    parse_move,
)
from phutball.script import (
    Branch,
    Claim,
    MoveStep,
    RoleOrderViolation,
    ScriptError,
    UnknownClaimKind,
    parse_script,
    serialize_script,
)

G12 = Geometry(12, 10)


class TestCoords:
    def test_basic_parsing(self):
        assert parse_coord("a2", G12) == (1, 2)
        assert parse_coord("j11", G12) == (10, 11)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            parse_coord("k3", G12)
        with pytest.raises(OutOfRange):
            parse_coord("a13", G12)

    def test_malformed(self):
        for text in ("", "3a", "a", "2", "a0", "a-1", "A2"):
            with pytest.raises(MalformedCoord):
                parse_coord(text, G12)

    def test_round_trip(self):
        for col in range(1, 11):
            for row in range(1, 13):
                assert parse_coord(format_coord((col, row)), G12) == (col, row)


class TestMoves:
    def test_jump_tokens(self):
        move = parse_move("SE,N,NE", G12)
        assert move == Jump((Direction.SE, Direction.N, Direction.NE))
        assert format_move(move) == "SE,N,NE"

    def test_placement(self):
        move = parse_move("b3", G12)
        assert move == Place((2, 3))
        assert format_move(move) == "b3"

    def test_arrow_aliases(self):
        assert parse_jump_path("↘↑↗") == (
            Direction.SE,
            Direction.N,
            Direction.NE,
        )
        assert parse_move("↗,↓", G12) == Jump((Direction.NE, Direction.S))

    def test_trailing_separator_rejected(self):
        with pytest.raises(MalformedMove):
            parse_move("NE,", G12)

    def test_unknown_token(self):
        with pytest.raises(UnknownDirectionToken):
            parse_move("NE,UP", G12)

    def test_empty(self):
        with pytest.raises(MalformedMove):
            parse_move("  ", G12)


class TestPositionFiles:
    def test_round_trip_canonical(self, fig3):
        text = serialize_position(fig3)
        assert parse_position(text) == fig3
        assert serialize_position(parse_position(text)) == text
        assert text.endswith("\n") and "\r" not in text

    def test_crlf_accepted(self, fig1):
        text = serialize_position(fig1).replace("\n", "\r\n")
        assert parse_position(text) == fig1

    def test_comments_and_field_order(self):
        text = (
            "%phutball 1\n"
            "cols: 5  # five files\n"
            "rows: 5\n"
            "to-move: B\n"
            "ball: c3\n"
            "chaps: a1 b2\n"
            "# trailing comment\n"
            "chaps: d4\n"
        )
        pos = parse_position(text)
        assert pos.ball == (3, 3)
        assert pos.to_move is Role.BETTY
        assert pos.chaps == frozenset({(1, 1), (2, 2), (4, 4)})

    def test_bad_header(self):
        with pytest.raises(BadHeader):
            parse_position("rows: 5\ncols: 5\nball: a2\nto-move: A\n")
        with pytest.raises(BadHeader):
            parse_position("%phutball 2\nrows: 5\ncols: 5\nball: a2\nto-move: A\n")

    def test_missing_field(self):
        with pytest.raises(BadHeader):
            parse_position("%phutball 1\nrows: 5\ncols: 5\nball: a2\n")

    def test_duplicate_chap(self):
        with pytest.raises(DuplicateChap):
            parse_position(
                "%phutball 1\nrows: 5\ncols: 5\nball: a2\nto-move: A\nchaps: b2 b2\n"
            )

    def test_ball_on_chap(self):
        with pytest.raises(BallOnChap):
            parse_position(
                "%phutball 1\nrows: 5\ncols: 5\nball: a2\nto-move: A\nchaps: a2\n"
            )

    def test_empty_board_round_trips(self):
        pos = make_position(5, 5, (3, 3))
        assert parse_position(serialize_position(pos)) == pos


SCRIPT = """\
use fig2
claim shot B via NE,S
branch tackle {
  move A c4 expect #
  claim win-in-one A
}
move A NE,S,E,N expect none   # the jot
claim win-within B 3
move B e2 expect # lenient=example-note
erratum example-note
"""


class TestScripts:
    def test_parse_structure(self):
        script = parse_script(SCRIPT, name="demo")
        assert script.base == "fig2"
        kinds = [type(item).__name__ for item in script.items]
        assert kinds == ["Claim", "Branch", "MoveStep", "Claim", "MoveStep"]
        branch = script.items[1]
        assert isinstance(branch, Branch) and branch.name == "tackle"
        step = branch.items[0]
        assert isinstance(step, MoveStep)
        assert step.expect == "#"  # not eaten by the comment stripper
        last = script.items[-1]
        assert last.lenient == "example-note"
        assert script.errata_notes == ("example-note",)

    def test_round_trip(self):
        script = parse_script(SCRIPT, name="demo")
        again = parse_script(serialize_script(script), name="demo")
        assert again == script

    def test_unknown_claim_kind(self):
        with pytest.raises(UnknownClaimKind):
            parse_script("use fig1\nclaim bogus A\n")

    def test_role_alternation_enforced(self):
        with pytest.raises(RoleOrderViolation):
            parse_script("use fig1\nmove A b3 expect !\nmove A c4 expect !\n")

    def test_claim_allows_role_handover(self):
        script = parse_script(
            "use fig1\nmove A b3 expect !\nclaim no-jumps\nmove A c4 expect !\n"
        )
        assert len(script.items) == 3

    def test_branch_resets_alternation(self):
        script = parse_script(
            "use fig1\n"
            "move A b3 expect !\n"
            "branch x {\n  move A c4 expect none\n}\n"
        )
        branch = script.items[1]
        assert branch.items[0].role == "A"

    def test_missing_use(self):
        with pytest.raises(ScriptError):
            parse_script("move A b3 expect !\n")

    def test_unclosed_branch(self):
        with pytest.raises(ScriptError):
            parse_script("use fig1\nbranch x {\nmove A b3 expect !\n")

    def test_claim_roles_required(self):
        with pytest.raises(ScriptError):
            parse_script("use fig1\nclaim shot\n")

    def test_expectation_vocabulary(self):
        with pytest.raises(ScriptError):
            parse_script("use fig1\nmove A b3 expect ?!\n")
