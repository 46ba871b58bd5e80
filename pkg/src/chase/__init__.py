"""Headless compiler for CHASE character-animation scripts.

Scripts built from ``do``, ``goTo`` and ``interactWith`` commands are parsed,
resolved against an action registry and a grid scene, scheduled into a
timeline of channel events, and sampled into frames.
"""

from .config import EngineConfig
from .diagnostics import ChaseError, Diagnostic, SourceSpan
from .formatter import format_script
from .lexer import Token, TokenKind, tokenize
from .motion import Frame, render_frames, sample
from .nodes import BaseCommand, CommandChain, Number, ScriptAst, Statement, Words
from .parser import parse, parse_source
from .pathfinding import Path, approach_cell, find_path
from .registry import ActionDef, Registry, default_behavior
from .resolver import ResolvedCommand, TaskMatrix, resolve
from .scene import GridPos, Scene, load_scene
from .scheduler import schedule
from .timeline import Timeline, TimelineEvent

__version__ = "0.1.0"


def compile_script(
    source: str,
    scene: Scene,
    registry: Registry | None = None,
    config: EngineConfig | None = None,
) -> Timeline:
    """Parse, resolve and schedule ``source`` in one call."""
    registry = registry or Registry.default()
    config = config or EngineConfig.from_registry(registry)
    matrix = resolve(parse_source(source), registry, scene)
    return schedule(matrix, scene, config)


__all__ = [
    "ActionDef",
    "BaseCommand",
    "ChaseError",
    "CommandChain",
    "Diagnostic",
    "EngineConfig",
    "Frame",
    "GridPos",
    "Number",
    "Path",
    "Registry",
    "ResolvedCommand",
    "Scene",
    "ScriptAst",
    "SourceSpan",
    "Statement",
    "TaskMatrix",
    "Timeline",
    "TimelineEvent",
    "Token",
    "TokenKind",
    "Words",
    "approach_cell",
    "compile_script",
    "default_behavior",
    "find_path",
    "format_script",
    "load_scene",
    "parse",
    "parse_source",
    "render_frames",
    "resolve",
    "sample",
    "schedule",
    "tokenize",
]
