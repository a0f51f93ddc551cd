"""Embedded, checksummed positions and analysis scripts.

Entry names are part of the public contract: ``fig1``, ``fig2``, ``fig3``
and ``fig5`` are positions; ``S1`` .. ``S6`` are scripts (long aliases
listed below). Every load re-checks a small checksum (dimensions, ball
square, chap count) so silent data edits cannot slip through.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..board import PhutballError, Position
from ..notation import format_coord, parse_position
from ..script import ProofScript, parse_script


class UnknownEntry(PhutballError):
    kind = "unknown-entry"


class ChecksumMismatch(PhutballError):
    kind = "checksum-mismatch"


@dataclass(frozen=True)
class PositionEntry:
    name: str
    filename: str
    rows: int
    cols: int
    ball: str
    chap_count: int
    note: str


@dataclass(frozen=True)
class ScriptEntry:
    name: str
    alias: str
    filename: str
    base: str
    note: str


POSITIONS: dict[str, PositionEntry] = {
    e.name: e
    for e in (
        PositionEntry("fig1", "fig1.pos", 5, 5, "a3", 11, "move-census study"),
        PositionEntry("fig2", "fig2.pos", 5, 5, "a2", 5, "tackle-or-jot study"),
        PositionEntry("fig3", "fig3.pos", 12, 10, "a2", 24, "12x10 drawn position"),
        PositionEntry("fig5", "fig5.pos", 19, 15, "a2", 93, "19x15 drawn position"),
    )
}

SCRIPTS: dict[str, ScriptEntry] = {
    e.name: e
    for e in (
        ScriptEntry("S1", "fig1-census", "s1-fig1-census.pbs", "fig1", "move census and legality verdicts"),
        ScriptEntry("S2", "fig2-tactics", "s2-fig2-tactics.pbs", "fig2", "tackle wins, jot loses"),
        ScriptEntry("S3", "thm-main", "s3-thm-main.pbs", "fig3", "forced main line of the 12x10 draw"),
        ScriptEntry("S4", "thm-tree", "s4-thm-tree.pbs", "fig3", "deviation tree after the second placement"),
        ScriptEntry("S5", "thm-endgame", "s5-thm-endgame.pbs", "fig3", "endgame threats and the a4 refutation"),
        ScriptEntry("S6", "cor-lines", "s6-cor-lines.pbs", "fig5", "19x15 opening and the longer deviation"),
    )
}

_ALIAS = {e.alias: e.name for e in SCRIPTS.values()}

SCRIPT_NAMES = tuple(sorted(SCRIPTS))


def _read(filename: str) -> str:
    return (resources.files(__package__) / "data" / filename).read_text(encoding="utf-8")


def position_text(name: str) -> str:
    entry = POSITIONS.get(name)
    if entry is None:
        raise UnknownEntry(f"unknown position {name!r}")
    return _read(entry.filename)


def load_position(name: str) -> Position:
    """Load and checksum-verify a corpus position."""
    entry = POSITIONS.get(name)
    if entry is None:
        raise UnknownEntry(f"unknown position {name!r}")
    pos = parse_position(_read(entry.filename))
    actual = (
        pos.geometry.rows,
        pos.geometry.cols,
        format_coord(pos.ball),
        len(pos.chaps),
    )
    expected = (entry.rows, entry.cols, entry.ball, entry.chap_count)
    if actual != expected:
        raise ChecksumMismatch(f"{name}: expected {expected}, file has {actual}")
    return pos


def script_text(name: str) -> str:
    entry = SCRIPTS.get(_ALIAS.get(name, name))
    if entry is None:
        raise UnknownEntry(f"unknown script {name!r}")
    return _read(entry.filename)


def load_script(name: str) -> ProofScript:
    canonical = _ALIAS.get(name, name)
    entry = SCRIPTS.get(canonical)
    if entry is None:
        raise UnknownEntry(f"unknown script {name!r}")
    script = parse_script(_read(entry.filename), name=canonical)
    if script.base != entry.base:
        raise ChecksumMismatch(f"{canonical}: expected base {entry.base}, script uses {script.base}")
    return script


def errata_registry() -> list[dict]:
    """The shipped machine-readable erratum entries (at most 3)."""
    return json.loads(_read("errata.json"))["entries"]


def registry_ids() -> frozenset[str]:
    return frozenset(entry["id"] for entry in errata_registry())
