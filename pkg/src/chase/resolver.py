"""Bind parsed statements to registry actions and scene entities.

The result is a :class:`TaskMatrix`: rows 1..N in execution order, each row
holding at most one command per character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .diagnostics import Diagnostic, ResolveError, SourceSpan
from .nodes import DO, GOTO, TASK2D, BaseCommand, Number, ScriptAst, Statement, Words
from .registry import INTERACTION, WHOLE_BODY, ActionDef, Registry, UnknownAction, body_part, motion_style
from .scene import Scene

_NOWHERE = SourceSpan(1, 1)


@dataclass(frozen=True)
class Solo:
    action: ActionDef
    part: str
    duration_s: float
    explicit_duration: bool = False
    facing_target: str | None = None
    span: SourceSpan = field(default=_NOWHERE, compare=False)

    @property
    def channel(self) -> str:
        return channel_for(self.part)


@dataclass(frozen=True)
class Locomotion:
    target: str
    style: str = "walk"
    span: SourceSpan = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Interaction:
    target: str
    module: ActionDef
    part: str
    duration_s: float
    span: SourceSpan = field(default=_NOWHERE, compare=False)

    @property
    def channel(self) -> str:
        return channel_for(self.part)


Kind = Union[Solo, Locomotion, Interaction]


@dataclass(frozen=True)
class ResolvedCommand:
    character: str
    kind: Kind
    overlay: Solo | None = None
    row: int = 1
    column: int = 1
    span: SourceSpan = field(default=_NOWHERE, compare=False)

    def __post_init__(self) -> None:
        if self.overlay is not None and isinstance(self.kind, Solo):
            raise ValueError("overlay only on locomotion or interaction")


@dataclass(frozen=True)
class TaskMatrix:
    rows: tuple[tuple[ResolvedCommand, ...], ...] = ()

    def __post_init__(self) -> None:
        for r, row in enumerate(self.rows, 1):
            names = [c.character for c in row]
            if len(set(names)) != len(names):
                raise ValueError(f"row {r} names a character twice")
            if any(c.row != r for c in row):
                raise ValueError(f"row {r} holds commands tagged with another row")

    @property
    def characters(self) -> list[str]:
        seen: dict[str, None] = {}
        for row in self.rows:
            for cmd in row:
                seen.setdefault(cmd.character)
        return list(seen)


def channel_for(part: str) -> str:
    return "body" if part == WHOLE_BODY else part


class _Errors:
    def __init__(self) -> None:
        self.items: list[Diagnostic] = []

    def add(self, code: str, message: str, span: SourceSpan) -> None:
        self.items.append(Diagnostic(code, message, span))


class _Abort(Exception):
    pass


class _Resolver:
    def __init__(self, registry: Registry, scene: Scene) -> None:
        self.registry = registry
        self.scene = scene
        self.errors = _Errors()

    def fail(self, code: str, message: str, span: SourceSpan):
        self.errors.add(code, message, span)
        return _Abort()

    def action(self, arg, span: SourceSpan) -> ActionDef:
        if not isinstance(arg, Words):
            raise self.fail("BAD-ARG", "expected an action keyword, found a number", arg.span)
        try:
            return self.registry.lookup(arg.text)
        except UnknownAction as exc:
            raise self.fail("UNKNOWN-ACTION", str(exc), arg.span) from None

    def entity(self, arg) -> str:
        if not isinstance(arg, Words):
            raise self.fail("BAD-ARG", "expected a scene entity name, found a number", arg.span)
        if not self.scene.has_entity(arg.text):
            raise self.fail("UNKNOWN-ENTITY", f"no character or object named {arg.text!r}", arg.span)
        return arg.text

    def check_part(self, action: ActionDef, part: str, span: SourceSpan) -> None:
        if part not in action.allowed_parts:
            allowed = ", ".join(sorted(action.allowed_parts))
            raise self.fail("PART-NOT-ALLOWED", f"{action.keyword} cannot use {part} (allowed: {allowed})", span)

    def duration(self, arg: Number) -> float:
        if not arg.value > 0:
            raise self.fail("BAD-DURATION", "duration must be greater than zero", arg.span)
        return arg.value

    def optional_params(self, args, allow_target: bool) -> dict[str, tuple[object, SourceSpan]]:
        """Classify trailing arguments into part / duration / facing target."""
        found: dict[str, tuple[object, SourceSpan]] = {}
        for arg in args:
            if isinstance(arg, Number):
                cls, value = "duration", self.duration(arg)
            elif body_part(arg.text) is not None:
                cls, value = "part", body_part(arg.text)
            elif allow_target and self.scene.has_entity(arg.text):
                cls, value = "target", arg.text
            elif allow_target:
                raise self.fail(
                    "UNKNOWN-ENTITY", f"{arg.text!r} is neither a body part nor a scene entity", arg.span
                )
            else:
                raise self.fail("UNEXPECTED-ARG", f"{arg.text!r} is not a body part or duration", arg.span)
            if cls in found:
                raise self.fail("DUPLICATE-PARAM-CLASS", f"{cls} given more than once", arg.span)
            found[cls] = (value, arg.span)
        return found

    def solo(self, cmd: BaseCommand, character: str) -> Solo:
        action = self.action(cmd.args[0], cmd.span)
        opts = self.optional_params(cmd.args[1:], allow_target=True)
        part = action.default_part
        if "part" in opts:
            part, span = opts["part"]
            self.check_part(action, part, span)
        target = None
        if "target" in opts:
            target, span = opts["target"]
            if target == character:
                raise self.fail("SELF-TARGET", f"{character} cannot face itself", span)
        explicit = "duration" in opts
        duration = opts["duration"][0] if explicit else action.default_duration_s
        return Solo(action, part, duration, explicit, target, cmd.span)

    def locomotion(self, cmd: BaseCommand, character: str) -> Locomotion:
        target = self.entity(cmd.args[0])
        if target == character:
            raise self.fail("SELF-TARGET", f"{character} cannot go to itself", cmd.args[0].span)
        style = "walk"
        if len(cmd.args) >= 2:
            arg = cmd.args[1]
            style = motion_style(arg.text) if isinstance(arg, Words) else None
            if style is None:
                raise self.fail("UNKNOWN-STYLE", "motion style must be walk or run", arg.span)
        if len(cmd.args) > 2:
            raise self.fail("UNEXPECTED-ARG", "goTo takes a target and an optional style", cmd.args[2].span)
        return Locomotion(target, style, cmd.span)

    def interaction(self, cmd: BaseCommand, character: str) -> Interaction:
        target = self.entity(cmd.args[0])
        if target == character:
            raise self.fail("SELF-TARGET", f"{character} cannot interact with itself", cmd.args[0].span)
        if len(cmd.args) < 2:
            raise self.fail("MISSING-ARG", "interactWith needs a target and an interaction module", cmd.span)
        module = self.action(cmd.args[1], cmd.span)
        if module.kind != INTERACTION:
            raise self.fail(
                "ACTION-KIND-MISMATCH", f"{module.keyword} is not an interaction module", cmd.args[1].span
            )
        opts = self.optional_params(cmd.args[2:], allow_target=False)
        part = module.default_part
        if "part" in opts:
            part, span = opts["part"]
            self.check_part(module, part, span)
        duration = opts["duration"][0] if "duration" in opts else module.default_duration_s
        return Interaction(target, module, part, duration, cmd.span)

    def command(self, stmt: Statement, character: str, row: int, column: int) -> ResolvedCommand:
        chain = stmt.chain
        base = chain.base
        if base.verb == DO:
            kind: Kind = self.solo(base, character)
        elif base.verb == GOTO:
            kind = self.locomotion(base, character)
        else:
            kind = self.interaction(base, character)
        overlay = self.solo(chain.overlay, character) if chain.overlay is not None else None
        return ResolvedCommand(character, kind, overlay, row, column, stmt.span)


def _cell(stmt: Statement, ordinal: int) -> tuple[int, int]:
    if not stmt.index:
        return ordinal, 1
    if len(stmt.index) == 1:
        return stmt.index[0], 1
    return stmt.index


def _assign_characters(ast: ScriptAst, scene: Scene, errors: _Errors) -> dict[int, str]:
    """Character for each statement (keyed by position in the script)."""
    names = list(scene.characters)
    assigned: dict[int, str] = {}

    def named(stmt: Statement) -> str | None:
        if stmt.chain.character is None:
            return None
        name = stmt.chain.character.text
        if name not in scene.characters:
            errors.add("UNKNOWN-CHARACTER", f"no character named {name!r}", stmt.chain.character.span)
            return None
        return name

    def fallback(stmt: Statement) -> str | None:
        if len(names) == 1:
            return names[0]
        if not names:
            errors.add("UNKNOWN-CHARACTER", "the scene has no characters", stmt.chain.span)
        else:
            errors.add(
                "AMBIGUOUS-CHARACTER",
                f"scene has {len(names)} characters; add .characterName(...)",
                stmt.chain.span,
            )
        return None

    if ast.mode != TASK2D:
        for i, stmt in enumerate(ast.statements):
            had_name = stmt.chain.character is not None
            name = named(stmt)
            if name is None and not had_name:
                name = fallback(stmt)
            if name is not None:
                assigned[i] = name
        return assigned

    # tasks[r][c]: column c is bound to the first character named in it (by row)
    order = sorted(range(len(ast.statements)), key=lambda i: ast.statements[i].index)
    bound: dict[int, str] = {}
    owner: dict[str, int] = {}
    bad: set[int] = set()
    for i in order:
        stmt = ast.statements[i]
        col = stmt.index[1]
        if stmt.chain.character is None:
            continue
        name = named(stmt)
        if name is None:
            bad.add(i)
            continue
        if col not in bound and name in owner:
            errors.add(
                "COLUMN-CHARACTER-MISMATCH",
                f"{name} already occupies column {owner[name]}",
                stmt.chain.character.span,
            )
            bad.add(i)
            continue
        bound.setdefault(col, name)
        owner.setdefault(name, col)
        if bound[col] != name:
            errors.add(
                "COLUMN-CHARACTER-MISMATCH",
                f"column {col} belongs to {bound[col]}, not {name}",
                stmt.chain.character.span,
            )
            bad.add(i)
    for i in order:
        if i in bad:
            continue
        stmt = ast.statements[i]
        col = stmt.index[1]
        if col not in bound:
            name = fallback(stmt)
            if name is None:
                continue
            if name in owner and owner[name] != col:
                errors.add(
                    "COLUMN-CHARACTER-MISMATCH", f"{name} already occupies column {owner[name]}", stmt.chain.span
                )
                continue
            bound[col] = name
            owner[name] = col
        assigned[i] = bound[col]
    return assigned


def resolve(ast: ScriptAst, registry: Registry, scene: Scene) -> TaskMatrix:
    """Resolve a parsed script against ``registry`` and ``scene``.

    Every statement is checked; all problems are raised together as one
    :class:`ResolveError`.
    """
    errors = _Errors()
    cells = [_cell(stmt, k) for k, stmt in enumerate(ast.statements, 1)]

    present = sorted({row for row, _ in cells})
    if present:
        missing = sorted(set(range(1, present[-1] + 1)) - set(present))
        for gap in missing:
            first_after = min((i for i, (row, _) in enumerate(cells) if row > gap), key=lambda i: cells[i])
            errors.add("ROW-GAP", f"task row {gap} is missing", ast.statements[first_after].span)

    assigned = _assign_characters(ast, scene, errors)

    resolver = _Resolver(registry, scene)
    resolver.errors = errors
    rows: dict[int, list[ResolvedCommand]] = {}
    for i, stmt in enumerate(ast.statements):
        if i not in assigned:
            continue
        row, col = cells[i]
        try:
            cmd = resolver.command(stmt, assigned[i], row, col)
        except _Abort:
            continue
        rows.setdefault(row, []).append(cmd)

    for row, cmds in rows.items():
        seen: set[str] = set()
        for cmd in sorted(cmds, key=lambda c: c.column):
            if cmd.character in seen:
                errors.add("ROW-CHARACTER-CONFLICT", f"{cmd.character} appears twice in row {row}", cmd.span)
            seen.add(cmd.character)

    if errors.items:
        raise ResolveError(errors.items)
    return TaskMatrix(tuple(tuple(sorted(rows[r], key=lambda c: c.column)) for r in sorted(rows)))
