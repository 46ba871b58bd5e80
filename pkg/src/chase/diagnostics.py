"""Source locations, diagnostics and the error types raised by every stage."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ERROR = "error"
WARNING = "warning"

# Stable diagnostic codes, grouped by the stage that emits them.
CATALOGUE: dict[str, str] = {
    # lexer / parser
    "ILLEGAL-CHAR": "character not allowed in a script",
    "UNEXPECTED-TOKEN": "token does not fit the grammar here",
    "UNKNOWN-VERB": "statement does not start with do, goTo or interactWith",
    "UNKNOWN-MODIFIER": "only .do(...) and .characterName(...) may be chained",
    "EMPTY-ARGS": "command called with no arguments",
    "BAD-ARG": "argument mixes words and numbers or has the wrong type",
    "UNBALANCED-PARENS": "parenthesis without a partner",
    "BAD-INDEX": "task index must be a positive integer",
    "MIXED-MODES": "bare, task[i] and tasks[i][j] statements cannot be mixed",
    "DUPLICATE-CELL": "task cell assigned twice",
    "CHAIN-ON-DO": "a do(...) command cannot carry a concurrent action",
    "DUPLICATE-OVERLAY": "a chain carries at most one concurrent do(...)",
    "DUPLICATE-CHARACTER": "a chain carries at most one characterName(...)",
    # resolver
    "UNKNOWN-ACTION": "action keyword not in the registry",
    "UNKNOWN-ENTITY": "name is not a character or object in the scene",
    "UNKNOWN-CHARACTER": "characterName does not name a scene character",
    "UNKNOWN-STYLE": "motion style is not walk or run",
    "PART-NOT-ALLOWED": "body part not allowed for this action",
    "ACTION-KIND-MISMATCH": "interactWith needs an interaction module",
    "MISSING-ARG": "mandatory argument missing",
    "UNEXPECTED-ARG": "argument not accepted by this command",
    "DUPLICATE-PARAM-CLASS": "two arguments of the same class",
    "BAD-DURATION": "duration must be greater than zero",
    "SELF-TARGET": "a character cannot target itself",
    "AMBIGUOUS-CHARACTER": "scene has several characters and none was named",
    "ROW-GAP": "task rows must be numbered 1..N without gaps",
    "COLUMN-CHARACTER-MISMATCH": "a tasks column must always name the same character",
    "ROW-CHARACTER-CONFLICT": "a character appears twice in one task row",
    # scheduler
    "UNREACHABLE": "no path to the target",
    "NO-APPROACH": "target has no free neighbouring cell",
    "OVERLAY-CHANNEL-CONFLICT": "concurrent action uses a channel the base command already uses",
    "OVERLAY-CLIPPED": "concurrent action longer than its base command was clipped",
    "NO-MOVEMENT": "character already stands at the destination",
    # documents
    "SCENE-MALFORMED": "scene document does not match the schema",
    "SCENE-DUPLICATE-NAME": "entity name used twice",
    "ENTITY-ON-OBSTACLE": "entity placed on an obstacle cell",
    "OUT-OF-BOUNDS": "position outside the grid",
    "REGISTRY-INVALID": "registry document does not match the schema",
    "CONFIG-INVALID": "config document does not match the schema",
}


@dataclass(frozen=True)
class SourceSpan:
    """1-based line/column plus length in characters."""

    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    span: SourceSpan | None = None
    severity: str = ERROR
    file: str | None = None

    def __post_init__(self) -> None:
        if self.code not in CATALOGUE:
            raise ValueError(f"undocumented diagnostic code {self.code!r}")

    def render(self, file: str | None = None) -> str:
        where = file or self.file or "<input>"
        if self.span is not None:
            where = f"{where}:{self.span.line}:{self.span.column}"
        return f"{where}: {self.severity} {self.code}: {self.message}"


class ChaseError(Exception):
    """Raised with one or more error diagnostics."""

    def __init__(self, diagnostics: Iterable[Diagnostic]) -> None:
        self.diagnostics = tuple(diagnostics)
        if not self.diagnostics:
            raise ValueError("ChaseError needs at least one diagnostic")
        super().__init__("\n".join(d.render() for d in self.diagnostics))

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]

    @classmethod
    def single(cls, code: str, message: str, span: SourceSpan | None = None):
        return cls([Diagnostic(code, message, span)])


class LexError(ChaseError):
    pass


class ParseError(ChaseError):
    pass


class ResolveError(ChaseError):
    pass


class ScheduleError(ChaseError):
    pass


class DocumentError(ChaseError):
    """Scene, registry or config document rejected."""
