"""HTTP analysis service: sessions, legal moves, tactics, and script runs.

Sessions live in memory (optionally snapshotted to a file on shutdown).
Every response carries the session's monotonically increasing revision;
writes must quote the revision they saw and are rejected with 409 when it
is stale. Engine legality is the single source of truth: every move
accepted here is accepted by apply_move and vice versa.
"""

from __future__ import annotations

import json
import threading
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field, replace
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import corpus
from .board import (
    Jump,
    Outcome,
    PhutballError,
    Place,
    Position,
    Role,
    apply_move,
    outcome_of,
    rot180,
)
from .movegen import legal_moves, winning_jumps
from .notation import format_coord, format_move, parse_move, parse_position
from .script import MoveStep
from .tactics import (
    TerminalAfterMove,
    annotate,
    has_shot,
    is_unjottable,
    is_untackleable,
    report as tactical_report,
    win_within,
)
from .verifier import run_script, verify_all

ANALYSIS_PLIES_CAP = 4


class CreateSession(BaseModel):
    position: str | None = None  # raw position-file text
    corpus: str | None = None    # corpus position name


class MoveRequest(BaseModel):
    move: str
    revision: int


class RevisionRequest(BaseModel):
    revision: int


class VerifyRequest(BaseModel):
    script: str
    strict: bool = False


@dataclass
class Session:
    id: str
    base: Position
    positions: list[Position] = field(default_factory=list)  # history incl. base
    moves: list[str] = field(default_factory=list)
    outcomes: list[str] = field(default_factory=list)
    revision: int = 1

    @property
    def current(self) -> Position:
        return self.positions[-1]

    @property
    def outcome(self) -> Outcome:
        if self.outcomes and self.outcomes[-1] != "ongoing":
            return Outcome(self.outcomes[-1])
        return outcome_of(self.current)


def _state_dict(session: Session, pos: Position | None = None) -> dict:
    p = pos if pos is not None else session.current
    return {
        "rows": p.geometry.rows,
        "cols": p.geometry.cols,
        "ball": format_coord(p.ball),
        "chaps": [format_coord(c) for c in sorted(p.chaps)],
        "to_move": p.to_move.value,
        "outcome": session.outcome.value if pos is None else outcome_of(p).value,
        "revision": session.revision,
        "history": list(session.moves),
    }


def _route_of(trace) -> list[str]:
    route = [format_coord(trace.start)]
    for seg in trace.segments:
        route.append(format_coord(seg.landing) if seg.landing else f"exit-{trace.exit_side}")
    return route


def create_app(snapshot: str | None = None) -> FastAPI:
    sessions: dict[str, Session] = {}
    lock = threading.Lock()

    def _save_snapshot() -> None:
        if not snapshot:
            return
        data = {
            sid: {
                "rows": s.base.geometry.rows,
                "cols": s.base.geometry.cols,
                "base_ball": format_coord(s.base.ball),
                "moves": list(s.moves),
            }
            for sid, s in sessions.items()
        }
        Path(snapshot).write_text(json.dumps(data, indent=2), encoding="utf-8")

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        _save_snapshot()

    app = FastAPI(title="phutball analysis service", lifespan=lifespan)
    # The browser board is served as static files from another origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(404, detail={"error": "unknown session"})
        return session

    def check_revision(session: Session, revision: int) -> None:
        if revision != session.revision:
            raise HTTPException(
                409,
                detail={
                    "error": "stale revision",
                    "expected": session.revision,
                    "got": revision,
                },
            )

    def engine_error(exc: PhutballError) -> HTTPException:
        return HTTPException(422, detail={"error": str(exc), "kind": exc.kind})

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession):
        if (body.position is None) == (body.corpus is None):
            raise HTTPException(
                422, detail={"error": "provide exactly one of position, corpus"}
            )
        try:
            if body.corpus is not None:
                base = corpus.load_position(body.corpus)
            else:
                base = parse_position(body.position)
        except corpus.UnknownEntry:
            raise HTTPException(404, detail={"error": f"unknown corpus entry {body.corpus!r}"})
        except PhutballError as exc:
            raise engine_error(exc)
        sid = uuid.uuid4().hex[:12]
        session = Session(sid, base, [base], [], [])
        with lock:
            sessions[sid] = session
        return {"id": sid, "state": _state_dict(session)}

    @app.get("/sessions/{sid}")
    def get_state(sid: str, transform: str | None = None):
        session = get_session(sid)
        if transform is None:
            return {"id": sid, "state": _state_dict(session)}
        if transform != "rot180":
            raise HTTPException(422, detail={"error": f"unknown transform {transform!r}"})
        return {"id": sid, "state": _state_dict(session, rot180(session.current))}

    @app.get("/sessions/{sid}/moves")
    def list_moves(sid: str, annotations: bool = True):
        session = get_session(sid)
        pos = session.current
        if session.outcome.terminal:
            return {"revision": session.revision, "placements": [], "jumps": [],
                    "outcome": session.outcome.value}
        listing = legal_moves(pos)
        placements = []
        for coord in sorted(listing.placements):
            entry = {"at": format_coord(coord)}
            if annotations:
                entry["annotation"] = annotate(pos, Place(coord)).annotation
            placements.append(entry)
        jumps = []
        for rec in listing.jumps:
            entry = {
                "path": ",".join(d.name for d in rec.path),
                "end": format_coord(rec.trace.end) if rec.trace.end else None,
                "exit": rec.trace.exit_side,
                "route": _route_of(rec.trace),
                "outcome": rec.outcome.value,
            }
            if annotations:
                if rec.outcome.terminal:
                    entry["annotation"] = None
                else:
                    entry["annotation"] = annotate(pos, Jump(rec.path)).annotation
            jumps.append(entry)
        return {"revision": session.revision, "placements": placements, "jumps": jumps}

    def _apply(session: Session, move_text: str) -> dict:
        pos = session.current
        if session.outcome.terminal:
            raise HTTPException(422, detail={"error": "game over", "kind": "terminal-position"})
        try:
            move = parse_move(move_text, pos.geometry)
            nxt, outcome = apply_move(pos, move)
        except PhutballError as exc:
            raise engine_error(exc)
        session.positions.append(nxt)
        session.moves.append(format_move(move))
        session.outcomes.append(outcome.value)
        session.revision += 1
        return {"outcome": outcome.value}

    @app.post("/sessions/{sid}/moves")
    def play_move(sid: str, body: MoveRequest):
        session = get_session(sid)
        with lock:
            check_revision(session, body.revision)
            result = _apply(session, body.move)
        return {"id": sid, **result, "state": _state_dict(session)}

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str, body: RevisionRequest):
        session = get_session(sid)
        with lock:
            check_revision(session, body.revision)
            if not session.moves:
                raise HTTPException(422, detail={"error": "nothing to undo"})
            session.positions.pop()
            session.moves.pop()
            session.outcomes.pop()
            session.revision += 1
        return {"id": sid, "state": _state_dict(session)}

    @app.get("/sessions/{sid}/analysis")
    def analysis(sid: str, plies: int = 2):
        session = get_session(sid)
        pos = session.current
        if session.outcome.terminal:
            return {"revision": session.revision, "outcome": session.outcome.value}
        plies = max(0, min(plies, ANALYSIS_PLIES_CAP))
        out: dict = {"revision": session.revision, "roles": {}}
        records = {rec.path: rec for rec in legal_moves(pos).jumps}
        for role in (Role.ALFRED, Role.BETTY):
            ok, witnesses = has_shot(pos, role)
            role_info: dict = {"shot": ok}
            if ok:
                role_info["witnesses"] = [
                    {
                        "path": ",".join(d.name for d in w),
                        "route": _route_of(records[w].trace),
                    }
                    for w in witnesses
                ]
                unjottable, jot = is_unjottable(pos, role)
                untackleable, tackle = is_untackleable(pos, role)
                role_info["unjottable"] = unjottable
                role_info["untackleable"] = untackleable
                role_info["win_in_one"] = unjottable and untackleable
                if jot is not None:
                    role_info["refuting_jot"] = ",".join(d.name for d in jot)
                if tackle is not None:
                    role_info["refuting_tackle"] = format_coord(tackle)
            role_info["win_within"] = {
                "plies": plies,
                "result": win_within(pos, role, plies),
            }
            out["roles"][role.value] = role_info
        return out

    @app.post("/sessions/{sid}/engine-move")
    def engine_move(sid: str, body: RevisionRequest):
        """Demo policy: immediate winning jump, else the unique tackle, else
        the least move that avoids an immediate losing reply."""
        session = get_session(sid)
        with lock:
            check_revision(session, body.revision)
            pos = session.current
            if session.outcome.terminal:
                raise HTTPException(422, detail={"error": "game over", "kind": "terminal-position"})
            mover = pos.to_move
            wins = winning_jumps(pos, mover)
            chosen: str | None = None
            if wins:
                chosen = ",".join(d.name for d in wins[0])
            else:
                opponent = mover.opposite
                threatened, _ = has_shot(pos, opponent)
                if threatened:
                    ok, tackle = is_untackleable(pos, opponent)
                    if not ok and tackle is not None:
                        tackles = [tackle]
                        chosen = format_coord(tackles[0])
                if chosen is None:
                    listing = legal_moves(pos)
                    candidates = [Place(c) for c in sorted(listing.placements)]
                    candidates += [Jump(r.path) for r in listing.jumps if not r.outcome.terminal]
                    for move in candidates:
                        child, outcome = apply_move(pos, move)
                        if outcome.terminal:
                            continue
                        if not winning_jumps(child, child.to_move):
                            chosen = format_move(move)
                            break
                    if chosen is None and candidates:
                        chosen = format_move(candidates[0])
            if chosen is None:
                raise HTTPException(422, detail={"error": "no move available"})
            result = _apply(session, chosen)
        return {"id": sid, "move": chosen, **result, "state": _state_dict(session)}

    @app.get("/corpus")
    def corpus_index():
        return {
            "positions": [
                {
                    "name": e.name,
                    "rows": e.rows,
                    "cols": e.cols,
                    "ball": e.ball,
                    "chaps": e.chap_count,
                    "note": e.note,
                }
                for e in corpus.POSITIONS.values()
            ],
            "scripts": [
                {"name": e.name, "alias": e.alias, "base": e.base, "note": e.note}
                for e in corpus.SCRIPTS.values()
            ],
        }

    @app.get("/corpus/{name}")
    def corpus_entry(name: str):
        try:
            if name in corpus.POSITIONS:
                return {"name": name, "kind": "position", "text": corpus.position_text(name)}
            return {"name": name, "kind": "script", "text": corpus.script_text(name)}
        except corpus.UnknownEntry:
            raise HTTPException(404, detail={"error": f"unknown corpus entry {name!r}"})

    @app.get("/corpus/{name}/steps")
    def corpus_steps(name: str):
        """Linear main-line steps of a script, for the replay stepper."""
        try:
            script = corpus.load_script(name)
        except corpus.UnknownEntry:
            raise HTTPException(404, detail={"error": f"unknown corpus entry {name!r}"})
        steps = [
            {
                "role": item.role,
                "move": item.move_text,
                "expect": item.expect,
                "lenient": item.lenient is not None,
            }
            for item in script.items
            if isinstance(item, MoveStep)
        ]
        return {"name": script.name, "base": script.base, "steps": steps}

    @app.post("/verify")
    def verify(body: VerifyRequest):
        try:
            script = corpus.load_script(body.script)
        except corpus.UnknownEntry:
            raise HTTPException(404, detail={"error": f"unknown script {body.script!r}"})
        report = run_script(script, strict=body.strict)
        return report.to_dict()

    return app


app = create_app()
