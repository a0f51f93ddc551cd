"""Acceptance gate: every shipped obligation at its stated time budget.

Each test prints one pass/fail line (run with ``pytest -s`` to see them
all). The corpus reproduction criteria replay the shipped scripts; the
engine-level criteria check the oracle, symmetry, and sensitivity
obligations directly.
"""

import random
import time
from contextlib import contextmanager

import pytest

from phutball import (
    Jump,
    Outcome,
    Place,
    Position,
    Role,
    apply_move,
    has_shot,
    is_win_in_one,
    legal_jumps,
    legal_moves,
    rot180,
    win_within,
)
from phutball import corpus
from phutball.board import PhutballError, trace_jump
from phutball.notation import parse_coord, parse_jump_path, parse_move
from phutball.script import MoveStep
from phutball.verifier import StepResult, run_script, verify_all

import naive_ref
from conftest import random_position


@contextmanager
def criterion(name: str, budget_s: float):
    start = time.perf_counter()
    failed = None
    try:
        yield
    except BaseException as exc:
        failed = exc
        raise
    finally:
        elapsed = time.perf_counter() - start
        status = "PASS" if failed is None and elapsed <= budget_s else "FAIL"
        print(f"[{status}] {name} ({elapsed:.2f}s < {budget_s:.0f}s)")
    assert elapsed <= budget_s, f"{name}: {elapsed:.2f}s over budget {budget_s}s"


def steps_of(report):
    return [r for r in report.results if isinstance(r, StepResult)]


def claims_of(report, kind):
    return [r for r in report.results if getattr(r, "kind", None) == kind]


def test_figure1_census(fig1):
    with criterion("Figure 1 census", 1.0):
        listing = legal_moves(fig1)
        assert len(listing.placements) == 13
        observed = {
            ",".join(d.name for d in rec.path): rec.outcome for rec in listing.jumps
        }
        assert observed == {
            "S": Outcome.BETTY_WINS,
            "SE": Outcome.BETTY_WINS,
            "SE,N": Outcome.ONGOING,
            "SE,N,N": Outcome.ALFRED_WINS,
            "SE,N,SE": Outcome.BETTY_WINS,
            "SE,N,NE": Outcome.ALFRED_WINS,
        }
        expected_errors = {
            "SE,NE": "sideline-exit",
            "SE,N,N,W": "sideline-exit",
            "SE,N,N,SE": "sideline-exit",
            "SE,N,SW": "no-chap",
        }
        for text, kind in expected_errors.items():
            with pytest.raises(PhutballError) as info:
                trace_jump(fig1, parse_jump_path(text))
            assert info.value.kind == kind, text


def test_figure2_tactics(fig2):
    with criterion("Figure 2 tactics", 5.0):
        ok, witnesses = has_shot(fig2, Role.BETTY)
        assert ok and parse_jump_path("NE,S") in witnesses

        tackled, _ = apply_move(fig2, parse_move("c4", fig2.geometry))
        assert is_win_in_one(tackled, Role.ALFRED)
        assert win_within(tackled, Role.ALFRED, 2)

        jotted, _ = apply_move(fig2, parse_move("NE,S,E,N", fig2.geometry))
        assert win_within(jotted, Role.BETTY, 3)  # the jot loses
        after_e2, _ = apply_move(jotted, parse_move("e2", jotted.geometry))
        assert is_win_in_one(after_e2, Role.BETTY)


def test_theorem_main_line():
    with criterion("Theorem main line (S3)", 60.0):
        report = run_script(corpus.load_script("S3"))
        assert report.passed and not report.errata
        steps = steps_of(report)
        assert [s.computed for s in steps] == [
            "!", "!", "!", "!", "!", "!", "*!", "none", "none",
        ]
        tackles = claims_of(report, "unique-tackle")
        assert [c.detail for c in tackles] == [
            "unique-tackle B d5",
            "unique-tackle A e6",
            "unique-tackle B f7",
            "unique-tackle A g8",
        ]
        assert all(c.ok for c in tackles)
        (defense,) = claims_of(report, "unique-defense")
        assert defense.ok and defense.detail == "unique-defense A i10"
        refutations = claims_of(report, "jot-refuted")
        assert len(refutations) == 2 and all(c.ok for c in refutations)
        (chap_count,) = claims_of(report, "chap-count")
        assert chap_count.ok
        (closure,) = claims_of(report, "position-equals")
        assert closure.ok


def test_deviation_tree():
    with criterion("Deviation tree (S4)", 120.0):
        report = run_script(corpus.load_script("S4"))
        assert report.passed
        # One machine-checked annotation erratum is registered for this
        # tree; everything else holds exactly.
        assert report.errata == ["tree-annotation-check"]
        hash_steps = [s for s in steps_of(report) if s.expected == "#"]
        assert len(hash_steps) == 11
        for step in hash_steps:
            if step.erratum:
                assert step.lenient and step.computed == "!!"
            else:
                assert step.properties["win_in_one"], step.path
        win_claims = claims_of(report, "win-in-one")
        assert len(win_claims) == 10 and all(c.ok for c in win_claims)
        coverage = claims_of(report, "branch-coverage")
        assert len(coverage) == 8 and all(c.ok for c in coverage)
        root = coverage[0]
        assert not root.lenient and root.erratum is None  # strict at the root


def test_endgame_claims():
    with criterion("Endgame claims (S5)", 60.0):
        report = run_script(corpus.load_script("S5"))
        assert report.passed and not report.errata

        (no_jumps,) = claims_of(report, "no-jumps")
        assert no_jumps.ok
        win_claims = claims_of(report, "win-in-one")
        assert len(win_claims) == 3 and all(c.ok for c in win_claims)

        shots = {c.detail: c for c in claims_of(report, "shot")}
        assert shots["shot B"].ok
        for detail in ("shot B via E,SW", "shot B via E,SE", "shot B via N,SE"):
            assert shots[detail].ok, detail

        # The a4 line replays to its forced finish: ...d5 ! then c4 #.
        a4_steps = [s for s in steps_of(report) if s.path.startswith("main/16:")]
        assert [s.move for s in a4_steps] == [
            "a4", "a1", "NE", "i10", "h9", "g8", "f7", "e6", "d5", "c4",
        ]
        assert [s.computed for s in a4_steps] == [
            "none", "!!", "none", "!", "!", "!", "!", "!", "!", "#",
        ]


def test_corollary_board():
    with criterion("Corollary board (S6)", 120.0):
        fig5 = corpus.load_position("fig5")
        assert (fig5.geometry.rows, fig5.geometry.cols) == (19, 15)
        assert len(fig5.chaps) == 93
        report = run_script(corpus.load_script("S6"))
        assert report.passed
        steps = steps_of(report)
        assert steps[0].computed == "!" and steps[1].computed == "!"
        last = steps[-1]
        assert last.move == "j8" and last.properties["win_in_one"]
        (column,) = claims_of(report, "column-untouched")
        assert column.ok


def test_oracle_equivalence():
    with criterion("Oracle equivalence (500 random positions)", 120.0):
        rng = random.Random(424243)
        for trial in range(500):
            pos = random_position(rng)
            listing = legal_moves(pos)
            naive_placements = naive_ref.naive_placements(
                pos.geometry.rows, pos.geometry.cols, pos.ball, list(pos.chaps)
            )
            assert set(listing.placements) == set(naive_placements), f"trial {trial}"
            ours = {
                (",".join(d.name for d in rec.path), rec.trace.end, rec.trace.exit_side)
                for rec in listing.jumps
            }
            theirs = {
                (",".join(path), end, exited)
                for path, end, exited, _ in naive_ref.naive_jumps(
                    pos.geometry.rows, pos.geometry.cols, pos.ball, list(pos.chaps)
                )
            }
            assert ours == theirs, f"trial {trial}"


def test_symmetry_duality(fig1, fig2, fig3, fig5):
    with criterion("Symmetry duality (corpus + 200 random positions)", 120.0):
        positions = [fig1, fig2, fig3, fig5]
        rng = random.Random(515151)
        positions += [random_position(rng) for _ in range(200)]
        for pos in positions:
            rot = rot180(pos)
            for role in (Role.ALFRED, Role.BETTY):
                assert has_shot(pos, role)[0] == has_shot(rot, role.opposite)[0]
                assert is_win_in_one(pos, role) == is_win_in_one(rot, role.opposite)


def test_sensitivity():
    with criterion("Sensitivity to a single chap (fig3 minus c5)", 120.0):
        fig3 = corpus.load_position("fig3")
        weakened = Position(
            fig3.geometry,
            fig3.ball,
            fig3.chaps - {parse_coord("c5", fig3.geometry)},
            fig3.to_move,
        )
        summary = verify_all(["S3", "S4"], base_override={"fig3": weakened})
        assert not summary.passed


def test_full_verification_run():
    with criterion("Full verify --all, deterministic", 300.0):
        first = verify_all()
        second = verify_all()
        assert first.passed
        assert first.to_json() == second.to_json()
        assert first.to_text() == second.to_text()
        registry = corpus.registry_ids()
        assert len(registry) <= 3
        assert set(first.errata) <= registry
