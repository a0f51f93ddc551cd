"""Replays analysis scripts against the engine and reports the evidence.

Every move step is annotated and compared against its expected symbol;
claims dispatch to the tactical and move-generation predicates. By
default an expected symbol is checked by implication (``!`` requires a
shot but does not forbid stronger properties); strict mode requires the
exact strongest symbol and disables leniency. A lenient step or claim
that fails is downgraded to a reported erratum instead of a hard failure.

Reports are deterministic byte for byte: wall-clock timing is kept out of
the canonical JSON and text renderings.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field, replace
from typing import Callable

from . import corpus
from .board import (
    Coord,
    Jump,
    Outcome,
    PhutballError,
    Place,
    Position,
    Role,
    apply_move,
    outcome_of,
    rot180,
    trace_jump,
)
from .movegen import (
    has_winning_jump,
    legal_jumps,
    legal_placements,
    ordered_moves,
    winning_jumps,
)
from .notation import (
    COLUMN_LETTERS,
    format_coord,
    format_move,
    parse_jump_path,
    parse_move,
)
from .script import Branch, Claim, MoveStep, ProofScript, UnresolvedPositionName
from .tactics import (
    annotate,
    has_shot,
    is_unjottable,
    is_untackleable,
    is_win_in_one,
    report as tactical_report,
    win_within,
)

#: Engine properties each expected symbol demands under implication mode.
REQUIRED_PROPERTIES: dict[str, tuple[str, ...]] = {
    "none": (),
    "!": ("shot",),
    "*!": ("shot", "unjottable"),
    "!!": ("shot", "untackleable"),
    "#": ("shot", "unjottable", "untackleable"),
}


class ReplayIllegalMove(PhutballError):
    kind = "replay-illegal-move"


@dataclass(frozen=True)
class StepResult:
    path: str
    role: str
    move: str
    expected: str
    computed: str
    properties: dict[str, bool]
    ok: bool
    lenient: bool
    erratum: str | None


@dataclass(frozen=True)
class ClaimResult:
    path: str
    kind: str
    detail: str
    ok: bool
    lenient: bool
    evidence: dict
    erratum: str | None


@dataclass
class VerificationReport:
    script: str
    base: str
    strict: bool
    results: list[StepResult | ClaimResult] = field(default_factory=list)
    errata: list[str] = field(default_factory=list)
    error: str | None = None
    elapsed: float = 0.0

    @property
    def hard_failures(self) -> int:
        return sum(1 for r in self.results if not r.ok and r.erratum is None) + (
            1 if self.error else 0
        )

    @property
    def passed(self) -> bool:
        return self.hard_failures == 0

    def to_dict(self) -> dict:
        entries = []
        for r in self.results:
            d = dataclasses.asdict(r)
            d["entry"] = "move" if isinstance(r, StepResult) else "claim"
            entries.append(d)
        return {
            "script": self.script,
            "base": self.base,
            "strict": self.strict,
            "passed": self.passed,
            "hard_failures": self.hard_failures,
            "errata": list(self.errata),
            "error": self.error,
            "results": entries,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"script {self.script} (base {self.base}{', strict' if self.strict else ''})"]
        for r in self.results:
            mark = "PASS" if r.ok else ("ERRATUM" if r.erratum is not None else "FAIL")
            if isinstance(r, StepResult):
                lines.append(
                    f"  [{mark}] {r.path} move {r.role} {r.move}"
                    f" expected {r.expected} computed {r.computed}"
                )
            else:
                extra = ""
                if not r.ok and r.evidence:
                    extra = " " + json.dumps(r.evidence, sort_keys=True)
                lines.append(f"  [{mark}] {r.path} claim {r.detail}{extra}")
        if self.error:
            lines.append(f"  [FAIL] {self.error}")
        for erratum in self.errata:
            lines.append(f"  erratum: {erratum}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"  => {verdict} ({self.hard_failures} hard failures)")
        return "\n".join(lines) + "\n"


Resolver = Callable[[str], Position]


def _default_resolver(name: str) -> Position:
    try:
        return corpus.load_position(name)
    except corpus.UnknownEntry:
        raise UnresolvedPositionName(f"unknown position name {name!r}") from None


class _Context:
    def __init__(self, script: ProofScript, strict: bool, resolver: Resolver, base: Position):
        self.script = script
        self.strict = strict
        self.resolver = resolver
        self.base = base
        self.report = VerificationReport(script.name, script.base, strict)
        self.traces = []  # every JumpTrace replayed while walking lines

    def note_failure(self, lenient: str | None, default_id: str) -> str | None:
        """Returns the erratum id when the failure is downgraded, else None."""
        if self.strict or lenient is None:
            return None
        erratum = lenient if lenient else default_id
        if erratum not in self.report.errata:
            self.report.errata.append(erratum)
        return erratum


def run_script(
    script: ProofScript,
    *,
    strict: bool = False,
    base: Position | None = None,
    resolver: Resolver = _default_resolver,
) -> VerificationReport:
    """Replay a script from its base position; never mutates shared state."""
    start = time.perf_counter()
    base_pos = base if base is not None else resolver(script.base)
    ctx = _Context(script, strict, resolver, base_pos)
    try:
        _walk(ctx, script.items, base_pos, "main")
        for note in script.errata_notes:
            if note not in ctx.report.errata:
                ctx.report.errata.append(note)
    except PhutballError as exc:
        ctx.report.error = f"{type(exc).__name__}: {exc}"
    ctx.report.elapsed = time.perf_counter() - start
    return ctx.report


def _walk(ctx: _Context, items, pos: Position, chain: str) -> None:
    index = 0
    for item in items:
        if isinstance(item, MoveStep):
            index += 1
            pos = _run_step(ctx, item, pos, f"{chain}/{index}")
        elif isinstance(item, Claim):
            index += 1
            _run_claim(ctx, item, pos, f"{chain}/{index}")
        elif isinstance(item, Branch):
            index += 1
            _walk(ctx, item.items, pos, f"{chain}/{index}:{item.name}")


def _run_step(ctx: _Context, step: MoveStep, pos: Position, path: str) -> Position:
    role = Role(step.role)
    if pos.to_move is not role:
        # Hypothetical hand-over; the parser already enforced alternation.
        pos = replace(pos, to_move=role)
    try:
        move = parse_move(step.move_text, pos.geometry)
        if isinstance(move, Jump):
            ctx.traces.append(trace_jump(pos, move.path))
        tact = annotate(pos, move)
        after, _ = apply_move(pos, move)
    except PhutballError as exc:
        raise ReplayIllegalMove(
            f"{ctx.script.name} {path}: move {step.role} {step.move_text}: {exc}"
        ) from exc

    props = {
        "shot": tact.has_shot,
        "unjottable": tact.unjottable,
        "untackleable": tact.untackleable,
        "win_in_one": tact.win_in_one,
    }
    if ctx.strict:
        ok = tact.annotation == step.expect
    else:
        ok = all(props[p] for p in REQUIRED_PROPERTIES[step.expect])
    erratum = None
    if not ok:
        erratum = ctx.note_failure(step.lenient, f"{ctx.script.name}:{path}")
    ctx.report.results.append(
        StepResult(
            path,
            step.role,
            step.move_text,
            step.expect,
            tact.annotation,
            props,
            ok or erratum is not None,
            step.lenient is not None,
            erratum,
        )
    )
    return after


# ---------------------------------------------------------------------------
# Claims


def _fmt_paths(paths) -> list[str]:
    return [",".join(d.name for d in p) for p in paths]


def check_claim(
    pos: Position,
    claim: Claim,
    *,
    base: Position | None = None,
    resolver: Resolver = _default_resolver,
    traces=(),
) -> tuple[bool, dict]:
    """Evaluate one claim against a position; results are data, not errors.

    ``base`` backs the ``start`` reference of position-equals claims and
    ``traces`` backs column-untouched; both are supplied by run_script.
    """
    kind = claim.kind
    role = Role(claim.role) if claim.role else None
    geom = pos.geometry

    if kind == "shot":
        ok, witnesses = has_shot(pos, role)
        evidence = {"witnesses": _fmt_paths(witnesses)}
        if ok and claim.args:
            if claim.args[0] != "via" or len(claim.args) != 2:
                raise PhutballError(f"claim shot: bad args {claim.args}")
            wanted = parse_jump_path(claim.args[1])
            ok = wanted in witnesses
            evidence["required"] = ",".join(d.name for d in wanted)
        return ok, evidence

    if kind == "no-shot":
        ok, witnesses = has_shot(pos, role)
        return not ok, {"witnesses": _fmt_paths(witnesses)}

    if kind == "unjottable":
        ok, _ = has_shot(pos, role)
        if not ok:
            return False, {"reason": "no shot to defend against"}
        good, refutation = is_unjottable(pos, role)
        ev = {} if good else {"refuting_jot": ",".join(d.name for d in refutation)}
        return good, ev

    if kind == "untackleable":
        ok, _ = has_shot(pos, role)
        if not ok:
            return False, {"reason": "no shot to defend against"}
        good, refutation = is_untackleable(pos, role)
        ev = {} if good else {"refuting_tackle": format_coord(refutation)}
        return good, ev

    if kind == "win-in-one":
        return is_win_in_one(pos, role), {}

    if kind == "unique-tackle" or kind == "unique-defense":
        (square_text,) = claim.args
        square = _parse_square(square_text, geom)
        ok, _ = has_shot(pos, role)
        if not ok:
            return False, {"reason": "attacker has no shot"}
        tackles = _tackles(pos, role)
        evidence = {"tackles": [format_coord(c) for c in tackles]}
        good = tackles == [square]
        if kind == "unique-defense" and good:
            unjottable, refutation = is_unjottable(pos, role)
            if not unjottable:
                evidence["refuting_jot"] = ",".join(d.name for d in refutation)
                good = False
        return good, evidence

    if kind == "jot-refuted":
        jot_text, reply_text = claim.args
        defender = role.opposite
        jot_pos = pos if pos.to_move is defender else replace(pos, to_move=defender)
        jot = parse_jump_path(jot_text)
        trace = trace_jump(jot_pos, jot)
        if isinstance(traces, list):
            traces.append(trace)
        mid, outcome = apply_move(jot_pos, Jump(jot))
        if outcome.terminal:
            return False, {"reason": "the jot already ended the game"}
        after, outcome = apply_move(mid, Place(_parse_square(reply_text, geom)))
        good = is_win_in_one(after, role)
        return good, {"jot": jot_text, "reply": reply_text}

    if kind == "no-jumps":
        records = legal_jumps(pos)
        return not records, {"jumps": _fmt_paths([r.path for r in records])}

    if kind == "placement-count":
        (count_text,) = claim.args
        actual = len(legal_placements(pos))
        return actual == int(count_text), {"actual": actual}

    if kind == "jump-count":
        (count_text,) = claim.args
        actual = len(legal_jumps(pos))
        return actual == int(count_text), {"actual": actual}

    if kind == "chap-count":
        (count_text,) = claim.args
        actual = len(pos.chaps)
        return actual == int(count_text), {"actual": actual}

    if kind == "jump-set":
        wanted = [parse_jump_path(a) for a in claim.args]
        actual = [rec.path for rec in legal_jumps(pos)]
        return sorted(map(tuple, wanted), key=_fmt_key) == sorted(
            map(tuple, actual), key=_fmt_key
        ), {"actual": _fmt_paths(actual)}

    if kind == "outcome":
        move_text, result_text = claim.args
        move = parse_move(move_text, geom)
        try:
            _, outcome = apply_move(pos, move)
        except PhutballError as exc:
            return False, {"error": f"{type(exc).__name__}: {exc}"}
        expected = {
            "ongoing": Outcome.ONGOING,
            "A": Outcome.ALFRED_WINS,
            "B": Outcome.BETTY_WINS,
        }[result_text]
        return outcome is expected, {"actual": outcome.value}

    if kind == "position-equals":
        transform, ref = claim.args
        target = base if ref == "start" else resolver(ref)
        if target is None:
            raise PhutballError("position-equals: no base position available")
        if transform == "rot180":
            target = rot180(target)
        elif transform != "identity":
            raise PhutballError(f"position-equals: unknown transform {transform!r}")
        ok = pos == target
        ev = {}
        if not ok:
            ev = {
                "ball": format_coord(pos.ball),
                "expected_ball": format_coord(target.ball),
                "chap_diff": [
                    format_coord(c) for c in sorted(pos.chaps ^ target.chaps)
                ],
                "to_move": pos.to_move.value,
                "expected_to_move": target.to_move.value,
            }
        return ok, ev

    if kind == "win-within":
        (plies_text,) = claim.args
        return win_within(pos, role, int(plies_text)), {}

    if kind == "branch-coverage":
        return _check_branch_coverage(pos, role, claim.args, geom)

    if kind == "illegal-jump":
        path_text, err_kind = claim.args
        jump = parse_jump_path(path_text)
        try:
            trace_jump(pos, jump)
        except PhutballError as exc:
            return exc.kind == err_kind, {"actual": exc.kind}
        return False, {"actual": "legal"}

    if kind == "column-untouched":
        (letter,) = claim.args
        col = COLUMN_LETTERS.index(letter) + 1
        contacts = _column_contacts(traces, col)
        return not contacts, {"contacts": contacts}

    raise PhutballError(f"unhandled claim kind {kind!r}")


def _fmt_key(path) -> str:
    return ",".join(d.name for d in path)


def _parse_square(text: str, geom) -> Coord:
    from .notation import parse_coord

    return parse_coord(text, geom)


def _tackles(pos: Position, attacker: Role) -> list[Coord]:
    """All defensive placements that remove every shot of the attacker."""
    out = []
    for coord in sorted(legal_placements(pos)):
        child = Position(pos.geometry, pos.ball, pos.chaps | {coord}, pos.to_move)
        if not has_winning_jump(child, attacker):
            out.append(coord)
    return out


def _check_branch_coverage(pos: Position, defender: Role, args, geom):
    """Every defender move is allowed, refuted by an immediate winning jump
    of the attacker, or itself an own goal."""
    allowed_jumps: set[tuple] = set()
    allowed_places: set[Coord] = set()
    bucket = None
    for token in args:
        if token == "jumps":
            bucket = "jumps"
        elif token == "places":
            bucket = "places"
        elif bucket == "jumps":
            allowed_jumps.add(tuple(parse_jump_path(token)))
        elif bucket == "places":
            allowed_places.add(_parse_square(token, geom))
        else:
            raise PhutballError(f"branch-coverage: bad args {args}")

    attacker = defender.opposite
    work = pos if pos.to_move is defender else replace(pos, to_move=defender)
    uncovered = []
    refuted = 0
    for move in ordered_moves(work):
        if isinstance(move, Place) and move.at in allowed_places:
            continue
        if isinstance(move, Jump) and tuple(move.path) in allowed_jumps:
            continue
        child, outcome = apply_move(work, move)
        if outcome.winner is attacker:
            refuted += 1
            continue
        if outcome.terminal:
            uncovered.append(format_move(move))
            continue
        if has_winning_jump(child, attacker):
            refuted += 1
            continue
        uncovered.append(format_move(move))
    evidence = {"refuted": refuted, "uncovered": uncovered}
    return not uncovered, evidence


def _column_contacts(traces, col: int) -> list[str]:
    contacts = []
    for trace in traces:
        points = []
        for seg in trace.segments:
            points.extend(seg.removed)
            if seg.landing is not None:
                points.append(seg.landing)
            else:
                last = seg.removed[-1]
                points.append((last[0] + seg.direction.dcol, last[1] + seg.direction.drow))
        for point in points:
            if point[0] >= col:
                contacts.append(format_coord(point) if point[1] >= 1 else str(point))
    return contacts


def _claim_detail(claim: Claim) -> str:
    parts = [claim.kind]
    if claim.role:
        parts.append(claim.role)
    parts.extend(claim.args)
    return " ".join(parts)


def _run_claim(ctx: _Context, claim: Claim, pos: Position, path: str) -> None:
    ok, evidence = check_claim(
        pos,
        claim,
        base=ctx.base,
        resolver=ctx.resolver,
        traces=ctx.traces,
    )
    erratum = None
    if not ok:
        erratum = ctx.note_failure(claim.lenient, f"{ctx.script.name}:{path}")
    ctx.report.results.append(
        ClaimResult(
            path,
            claim.kind,
            _claim_detail(claim),
            ok or erratum is not None,
            claim.lenient is not None,
            evidence,
            erratum,
        )
    )


# ---------------------------------------------------------------------------
# Whole-corpus runs


@dataclass
class Summary:
    reports: list[VerificationReport]
    registry: frozenset[str]

    @property
    def errata(self) -> list[str]:
        out: list[str] = []
        for report in self.reports:
            for erratum in report.errata:
                if erratum not in out:
                    out.append(erratum)
        return out

    @property
    def unregistered_errata(self) -> list[str]:
        return [e for e in self.errata if e not in self.registry]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and not self.unregistered_errata

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "errata": self.errata,
            "registry": sorted(self.registry),
            "unregistered_errata": self.unregistered_errata,
            "reports": [r.to_dict() for r in self.reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        blocks = [r.to_text() for r in self.reports]
        lines = ["", "errata emitted: " + (", ".join(self.errata) if self.errata else "none")]
        if self.unregistered_errata:
            lines.append("UNREGISTERED errata: " + ", ".join(self.unregistered_errata))
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "".join(blocks) + "\n".join(lines) + "\n"


def verify_all(
    names: list[str] | None = None,
    *,
    strict: bool = False,
    base_override: dict[str, Position] | None = None,
) -> Summary:
    """Run corpus scripts (all by default) in name order.

    ``base_override`` substitutes positions by corpus name, used by the
    sensitivity checks to verify the suite notices a perturbed board.
    """
    if names is None:
        names = list(corpus.SCRIPT_NAMES)
    reports = []
    for name in names:
        try:
            script = corpus.load_script(name)
            base = None
            if base_override and script.base in base_override:
                base = base_override[script.base]
            report = run_script(script, strict=strict, base=base)
        except PhutballError as exc:
            report = VerificationReport(name, "?", strict)
            report.error = f"{type(exc).__name__}: {exc}"
        reports.append(report)
    return Summary(reports, corpus.registry_ids())
