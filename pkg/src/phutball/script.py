"""Replayable analysis scripts: moves with expected annotations plus claims.

The grammar is line oriented::

    use <position-name>
    move <A|B> <move> expect <none|!|*!|!!|#> [lenient[=erratum-id]]
    claim <kind> <args...> [lenient[=erratum-id]]
    branch <name> {
        ...
    }
    erratum <id>          # registers an interpretive note with the run
    # comment

Move steps must alternate roles, except at the start of a branch or right
after a claim: a claim marks an analysis waypoint after which the script
may hand the move to either side (used for "suppose the defender passes"
threat lines). Branches fork from the position reached at their point in
the enclosing line and never affect it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .board import PhutballError

EXPECTATIONS = ("none", "!", "*!", "!!", "#")

#: Claim vocabulary; every kind maps to exactly one verifier predicate.
CLAIM_KINDS = (
    "shot",
    "no-shot",
    "unjottable",
    "untackleable",
    "win-in-one",
    "unique-tackle",
    "unique-defense",
    "jot-refuted",
    "no-jumps",
    "placement-count",
    "jump-count",
    "jump-set",
    "outcome",
    "position-equals",
    "chap-count",
    "win-within",
    "branch-coverage",
    "illegal-jump",
    "column-untouched",
)

_ROLE_TOKENS = ("A", "B")


class ScriptError(PhutballError):
    kind = "script-error"


class UnknownClaimKind(ScriptError):
    kind = "unknown-claim-kind"


class RoleOrderViolation(ScriptError):
    kind = "role-order-violation"


class UnresolvedPositionName(ScriptError):
    kind = "unresolved-position-name"


@dataclass(frozen=True)
class MoveStep:
    role: str               # "A" or "B"
    move_text: str
    expect: str             # one of EXPECTATIONS
    lenient: str | None     # erratum id, "" for a bare lenient flag
    line_no: int


@dataclass(frozen=True)
class Claim:
    kind: str
    role: str | None
    args: tuple[str, ...]
    lenient: str | None
    line_no: int


@dataclass(frozen=True)
class Branch:
    name: str
    items: tuple["ScriptItem", ...]
    line_no: int


ScriptItem = MoveStep | Claim | Branch


@dataclass(frozen=True)
class ProofScript:
    name: str
    base: str
    items: tuple[ScriptItem, ...]
    errata_notes: tuple[str, ...] = field(default=())


def _strip_script_comment(line: str) -> str:
    """Cut a ``#`` comment, except when ``#`` is the expectation symbol."""
    idx = 0
    while True:
        idx = line.find("#", idx)
        if idx < 0:
            return line
        before = line[:idx].split()
        if before and before[-1] == "expect":
            idx += 1
            continue
        return line[:idx]


def _pop_lenient(tokens: list[str], line_no: int) -> str | None:
    if tokens and tokens[-1].startswith("lenient"):
        token = tokens.pop()
        if token == "lenient":
            return ""
        if token.startswith("lenient="):
            return token[len("lenient=") :]
        raise ScriptError(f"line {line_no}: bad lenient flag {token!r}")
    return None


# Claim kinds that start with a subject role token.
_ROLE_CLAIMS = {
    "shot",
    "no-shot",
    "unjottable",
    "untackleable",
    "win-in-one",
    "unique-tackle",
    "unique-defense",
    "jot-refuted",
    "win-within",
    "branch-coverage",
}


def _parse_claim(tokens: list[str], line_no: int, lenient: str | None) -> Claim:
    kind = tokens[0]
    if kind not in CLAIM_KINDS:
        raise UnknownClaimKind(f"line {line_no}: unknown claim kind {kind!r}")
    rest = tokens[1:]
    role: str | None = None
    if kind in _ROLE_CLAIMS:
        if not rest or rest[0] not in _ROLE_TOKENS:
            raise ScriptError(f"line {line_no}: claim {kind} needs a role (A or B)")
        role = rest[0]
        rest = rest[1:]
    return Claim(kind, role, tuple(rest), lenient, line_no)


def parse_script(text: str, name: str = "<script>") -> ProofScript:
    """Parse the script grammar; structural errors carry line numbers."""
    base: str | None = None
    errata: list[str] = []
    root: list[ScriptItem] = []
    # Stack of (items, name, last-item-kind marker) for nested branches.
    stack: list[tuple[list[ScriptItem], str, int]] = []
    items = root
    last_move_role: str | None = None  # reset by claims and branch boundaries

    for line_no, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = _strip_script_comment(raw).strip()
        if not line:
            continue

        if line == "}":
            if not stack:
                raise ScriptError(f"line {line_no}: unmatched '}}'")
            branch_items, branch_name, branch_line = stack.pop()
            branch = Branch(branch_name, tuple(branch_items), branch_line)
            items = stack[-1][0] if stack else root
            items.append(branch)
            last_move_role = _last_role(items)
            continue

        tokens = line.split()
        head = tokens[0]

        if head == "use":
            if len(tokens) != 2 or base is not None or stack or root:
                raise ScriptError(f"line {line_no}: 'use' must come first, once")
            base = tokens[1]
        elif head == "erratum":
            if len(tokens) != 2:
                raise ScriptError(f"line {line_no}: 'erratum' takes one id")
            errata.append(tokens[1])
        elif head == "move":
            body = tokens[1:]
            lenient = _pop_lenient(body, line_no)
            if len(body) != 4 or body[0] not in _ROLE_TOKENS or body[2] != "expect":
                raise ScriptError(
                    f"line {line_no}: expected 'move <A|B> <move> expect <symbol>'"
                )
            role, move_text, _, expect = body
            if expect not in EXPECTATIONS:
                raise ScriptError(f"line {line_no}: bad expectation {expect!r}")
            if role == last_move_role:
                raise RoleOrderViolation(
                    f"line {line_no}: consecutive moves by {role} without an"
                    " interposing claim"
                )
            items.append(MoveStep(role, move_text, expect, lenient, line_no))
            last_move_role = role
        elif head == "claim":
            body = tokens[1:]
            if not body:
                raise ScriptError(f"line {line_no}: empty claim")
            lenient = _pop_lenient(body, line_no)
            items.append(_parse_claim(body, line_no, lenient))
            last_move_role = None
        elif head == "branch":
            if len(tokens) != 3 or tokens[2] != "{":
                raise ScriptError(f"line {line_no}: expected 'branch <name> {{'")
            stack.append(([], tokens[1], line_no))
            items = stack[-1][0]
            last_move_role = None
        else:
            raise ScriptError(f"line {line_no}: unknown directive {head!r}")

    if stack:
        raise ScriptError(f"unclosed branch {stack[-1][1]!r}")
    if base is None:
        raise ScriptError("script has no 'use' line")
    return ProofScript(name, base, tuple(root), tuple(errata))


def _last_role(items: list[ScriptItem]) -> str | None:
    """Alternation context after appending an item (branches reset it)."""
    if items and isinstance(items[-1], MoveStep):
        return items[-1].role
    return None


def serialize_script(script: ProofScript) -> str:
    """Regenerate script text (canonical whitespace, LF endings)."""
    out: list[str] = [f"use {script.base}"]

    def emit(items: tuple[ScriptItem, ...], depth: int) -> None:
        pad = "  " * depth
        for item in items:
            if isinstance(item, MoveStep):
                suffix = ""
                if item.lenient is not None:
                    suffix = " lenient" if item.lenient == "" else f" lenient={item.lenient}"
                out.append(f"{pad}move {item.role} {item.move_text} expect {item.expect}{suffix}")
            elif isinstance(item, Claim):
                parts = ["claim", item.kind]
                if item.role is not None:
                    parts.append(item.role)
                parts.extend(item.args)
                if item.lenient is not None:
                    parts.append("lenient" if item.lenient == "" else f"lenient={item.lenient}")
                out.append(pad + " ".join(parts))
            else:
                out.append(f"{pad}branch {item.name} {{")
                emit(item.items, depth + 1)
                out.append(f"{pad}}}")

    emit(script.items, 0)
    for note in script.errata_notes:
        out.append(f"erratum {note}")
    return "\n".join(out) + "\n"
