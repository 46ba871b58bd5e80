"""Syntax tree for parsed scripts.

Spans are carried on every node for diagnostics but excluded from equality,
so a tree compares equal to the tree obtained by re-parsing its printed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .diagnostics import SourceSpan

DO = "do"
GOTO = "goTo"
INTERACT = "interactWith"
VERBS = (DO, GOTO, INTERACT)

BARE = "bare"
TASK1D = "task1d"
TASK2D = "task2d"

_NOWHERE = SourceSpan(1, 1)


@dataclass(frozen=True)
class Words:
    """A word-sequence argument such as ``wave hand``."""

    words: tuple[str, ...]
    span: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("word sequence must not be empty")

    @property
    def text(self) -> str:
        return " ".join(self.words)


@dataclass(frozen=True)
class Number:
    value: float
    span: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("numbers are nonnegative")


ArgValue = Union[Words, Number]


@dataclass(frozen=True)
class BaseCommand:
    verb: str
    args: tuple[ArgValue, ...]
    span: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.verb not in VERBS:
            raise ValueError(f"unknown verb {self.verb!r}")
        if not self.args:
            raise ValueError("commands take at least one argument")


@dataclass(frozen=True)
class CommandChain:
    base: BaseCommand
    overlay: BaseCommand | None = None
    character: Words | None = None
    span: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.overlay is not None:
            if self.base.verb == DO:
                raise ValueError("overlay requires a goTo or interactWith base")
            if self.overlay.verb != DO:
                raise ValueError("overlay must be a do command")


@dataclass(frozen=True)
class Statement:
    """One script line. ``index`` is () for bare, (i,) for task[i], (r, c) for tasks[r][c]."""

    chain: CommandChain
    index: tuple[int, ...] = ()
    span: SourceSpan = field(default=_NOWHERE, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.index) > 2 or any(i < 1 for i in self.index):
            raise ValueError(f"bad task index {self.index}")

    @property
    def mode(self) -> str:
        return (BARE, TASK1D, TASK2D)[len(self.index)]


@dataclass(frozen=True)
class ScriptAst:
    statements: tuple[Statement, ...] = ()
    mode: str = BARE

    def __post_init__(self) -> None:
        if not self.statements:
            # an empty script has no statement to carry a mode
            object.__setattr__(self, "mode", BARE)
        if any(s.mode != self.mode for s in self.statements):
            raise ValueError("statements mix modes")
