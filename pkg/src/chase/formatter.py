"""Canonical pretty-printer for script trees."""

from __future__ import annotations

from decimal import Decimal

from .nodes import ArgValue, BaseCommand, CommandChain, Number, ScriptAst, Statement


def format_number(value: float) -> str:
    """Shortest plain decimal that reads back as ``value`` (no exponent)."""
    text = format(Decimal(repr(float(value))), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def _arg(arg: ArgValue) -> str:
    if isinstance(arg, Number):
        return format_number(arg.value)
    return arg.text


def _command(cmd: BaseCommand) -> str:
    return f"{cmd.verb}({', '.join(_arg(a) for a in cmd.args)})"


def format_chain(chain: CommandChain) -> str:
    text = _command(chain.base)
    if chain.overlay is not None:
        text += "." + _command(chain.overlay)
    if chain.character is not None:
        text += f".characterName({chain.character.text})"
    return text


def format_statement(stmt: Statement) -> str:
    if not stmt.index:
        return format_chain(stmt.chain)
    name = "task" if len(stmt.index) == 1 else "tasks"
    cells = "".join(f"[{i}]" for i in stmt.index)
    return f"{name}{cells} = {format_chain(stmt.chain)}"


def format_script(ast: ScriptAst) -> str:
    return "\n".join(format_statement(s) for s in ast.statements)
