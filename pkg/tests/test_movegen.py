import random

import pytest

from phutball import (
    Jump,
    Outcome,
    Role,
    apply_move,
    legal_jumps,
    legal_moves,
    move_census,
    winning_jumps,
)
from phutball.movegen import (
    JumpCapExceeded,
    find_winning_jump,
    has_winning_jump,
    jump_states,
    ordered_moves,
)
from phutball.notation import parse_jump_path
from phutball.board import Position, rot180, rot180_move

import naive_ref
from conftest import random_position


def paths(records):
    return [",".join(d.name for d in rec.path) for rec in records]


class TestFig1Census:
    def test_exact_jump_set(self, fig1):
        records = legal_jumps(fig1)
        assert paths(records) == [
            "S",
            "SE",
            "SE,N",
            "SE,N,N",
            "SE,N,NE",
            "SE,N,SE",
        ]
        by_path = {p: rec.outcome for p, rec in zip(paths(records), records)}
        assert by_path["S"] is Outcome.BETTY_WINS
        assert by_path["SE"] is Outcome.BETTY_WINS
        assert by_path["SE,N"] is Outcome.ONGOING
        assert by_path["SE,N,N"] is Outcome.ALFRED_WINS
        assert by_path["SE,N,SE"] is Outcome.BETTY_WINS
        assert by_path["SE,N,NE"] is Outcome.ALFRED_WINS

    def test_movelist_totals(self, fig1):
        listing = legal_moves(fig1)
        assert len(listing.placements) == 13
        assert len(listing.jumps) == 6
        assert len(listing) == 19

    def test_winning_jump_split(self, fig1):
        alfred = winning_jumps(fig1, Role.ALFRED)
        betty = winning_jumps(fig1, Role.BETTY)
        fmt = lambda ps: [",".join(d.name for d in p) for p in ps]
        assert fmt(alfred) == ["SE,N,N", "SE,N,NE"]
        assert fmt(betty) == ["S", "SE", "SE,N,SE"]


class TestEnumeration:
    def test_no_adjacent_chap_means_no_jumps(self):
        from phutball import make_position

        pos = make_position(5, 5, (3, 3), [(1, 1), (5, 5)])
        assert legal_jumps(pos) == []

    def test_prefix_closure(self, fig1, fig2):
        for pos in (fig1, fig2):
            listing = {rec.path for rec in legal_jumps(pos)}
            for rec in legal_jumps(pos):
                if rec.trace.exit_side is not None:
                    continue
                for cut in range(1, len(rec.path)):
                    prefix = rec.path[:cut]
                    assert prefix in listing

    def test_blocked_diagonal_against_sideline(self, fig3):
        pos = fig3
        for square in ("b3", "c4", "d5", "e6", "f7", "g8", "h9", "i10", "j11"):
            from phutball.notation import parse_coord
            from phutball import Place

            pos, _ = apply_move(pos, Place(parse_coord(square, pos.geometry)))
        assert legal_jumps(pos) == []

    def test_cap_raises(self, fig1):
        with pytest.raises(JumpCapExceeded):
            legal_jumps(fig1, cap=3)

    def test_tackled_fig2_has_top_row_winner(self, fig2):
        from phutball import Place
        from phutball.notation import parse_coord

        tackled, _ = apply_move(fig2, Place(parse_coord("c4", fig2.geometry)))
        wins = winning_jumps(tackled, Role.ALFRED)
        assert (parse_jump_path("NE"),)[0] in wins


class TestOracleEquivalence:
    def test_naive_oracle_agreement(self):
        rng = random.Random(20250809)
        for trial in range(500):
            pos = random_position(rng)
            listing = legal_moves(pos)
            assert set(listing.placements) == set(
                naive_ref.naive_placements(
                    pos.geometry.rows, pos.geometry.cols, pos.ball, list(pos.chaps)
                )
            ), f"trial {trial}"
            ours = {
                (",".join(d.name for d in rec.path),
                 rec.trace.end,
                 rec.trace.exit_side,
                 rec.outcome.value)
                for rec in listing.jumps
            }
            theirs = {
                (",".join(path), end, exited, outcome)
                for path, end, exited, outcome in naive_ref.naive_jumps(
                    pos.geometry.rows, pos.geometry.cols, pos.ball, list(pos.chaps)
                )
            }
            assert ours == theirs, f"trial {trial}"

    def test_existence_search_matches_enumeration(self):
        rng = random.Random(99)
        for _ in range(300):
            pos = random_position(rng)
            for role in (Role.ALFRED, Role.BETTY):
                full = winning_jumps(pos, role)
                assert has_winning_jump(pos, role) == bool(full)
                witness = find_winning_jump(pos, role)
                if full:
                    assert witness is not None
                    _, outcome = apply_move(pos, Jump(witness))
                    assert outcome is Outcome.win(role)
                else:
                    assert witness is None

    def test_jump_states_cover_enumeration(self):
        rng = random.Random(4242)
        for _ in range(150):
            pos = random_position(rng)
            end_states = {
                (landing, removed, exit_side)
                for _, landing, removed, exit_side in jump_states(pos)
            }
            from_paths = {
                (rec.trace.end,
                 frozenset(rec.trace.removed),
                 rec.trace.exit_side)
                for rec in legal_jumps(pos)
            }
            assert end_states == from_paths


class TestWinningJumps:
    def test_subset_of_enumeration(self):
        rng = random.Random(31)
        for _ in range(100):
            pos = random_position(rng)
            for role in (Role.ALFRED, Role.BETTY):
                target = Outcome.win(role)
                expected = [rec.path for rec in legal_jumps(pos) if rec.outcome is target]
                assert winning_jumps(pos, role) == expected

    def test_rot180_bijection(self):
        rng = random.Random(37)
        for _ in range(100):
            pos = random_position(rng)
            rot = rot180(pos)
            ours = winning_jumps(pos, Role.ALFRED)
            theirs = winning_jumps(rot, Role.BETTY)
            assert sorted(
                tuple(d.opposite.name for d in path) for path in ours
            ) == sorted(tuple(d.name for d in p) for p in theirs)


class TestCensus:
    def test_fig1_one_ply(self, fig1):
        assert move_census(fig1, 1) == 19

    def test_terminal_contributes_one(self):
        from phutball import make_position

        done = make_position(5, 5, (3, 1), [(2, 3)])
        assert move_census(done, 1) == 1
        assert move_census(done, 3) == 1

    def test_fig2_regression_constants(self, fig2):
        # Frozen from the naive reference enumerator.
        assert move_census(fig2, 1) == 23
        assert move_census(fig2, 2) == 483

    def test_census_matches_naive(self):
        rng = random.Random(51)
        for _ in range(25):
            pos = random_position(rng, max_rows=5, max_cols=4, max_chaps=5)
            assert move_census(pos, 2) == naive_ref.naive_census(
                pos.geometry.rows, pos.geometry.cols, pos.ball, list(pos.chaps), 2
            )

    def test_invariance_under_rotation(self, fig1, fig2):
        for pos in (fig1, fig2):
            assert move_census(pos, 1) == move_census(rot180(pos), 1)
            assert move_census(pos, 2) == move_census(rot180(pos), 2)


class TestOrderedMoves:
    def test_placements_then_jumps(self, fig1):
        moves = ordered_moves(fig1)
        from phutball import Place

        split = len(legal_moves(fig1).placements)
        assert all(isinstance(m, Place) for m in moves[:split])
        assert all(isinstance(m, Jump) for m in moves[split:])
        placements = [m.at for m in moves[:split]]
        assert placements == sorted(placements)
