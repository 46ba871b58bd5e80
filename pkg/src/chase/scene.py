"""Scene documents: an obstacle grid plus named characters and objects."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping, NamedTuple

from .diagnostics import Diagnostic, DocumentError, SourceSpan

DEFAULT_CELL_SIZE_M = 0.5


class GridPos(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Grid:
    width: int
    height: int
    cell_size_m: float = DEFAULT_CELL_SIZE_M
    obstacles: frozenset[GridPos] = frozenset()

    def in_bounds(self, pos: tuple[int, int]) -> bool:
        return 0 <= pos[0] < self.width and 0 <= pos[1] < self.height

    def passable(self, pos: tuple[int, int]) -> bool:
        return self.in_bounds(pos) and pos not in self.obstacles

    def center_m(self, pos: tuple[int, int]) -> tuple[float, float]:
        """Metric coordinates of the centre of a cell."""
        return ((pos[0] + 0.5) * self.cell_size_m, (pos[1] + 0.5) * self.cell_size_m)


@dataclass(frozen=True)
class Scene:
    grid: Grid
    characters: Mapping[str, GridPos] = field(default_factory=dict)
    objects: Mapping[str, GridPos] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "characters", MappingProxyType(dict(self.characters)))
        object.__setattr__(self, "objects", MappingProxyType(dict(self.objects)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scene):
            return NotImplemented
        return (
            self.grid == other.grid
            and dict(self.characters) == dict(other.characters)
            and dict(self.objects) == dict(other.objects)
        )

    def __hash__(self) -> int:
        return hash((self.grid, tuple(self.characters.items()), tuple(self.objects.items())))

    def has_entity(self, name: str) -> bool:
        return name in self.characters or name in self.objects

    def position(self, name: str) -> GridPos:
        if name in self.characters:
            return self.characters[name]
        return self.objects[name]


def _fail(code: str, message: str, span: SourceSpan | None = None) -> DocumentError:
    return DocumentError([Diagnostic(code, message, span)])


def _pos(raw: Any, what: str) -> GridPos:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)
    ):
        raise _fail("SCENE-MALFORMED", f"{what}: position must be [x, y] integers, got {raw!r}")
    return GridPos(raw[0], raw[1])


def scene_from_document(doc: Any) -> Scene:
    if not isinstance(doc, dict) or not isinstance(doc.get("grid"), dict):
        raise _fail("SCENE-MALFORMED", "scene needs a 'grid' object")
    g = doc["grid"]
    width, height = g.get("width"), g.get("height")
    cell = g.get("cell_size_m", DEFAULT_CELL_SIZE_M)
    if not (isinstance(width, int) and isinstance(height, int) and width > 0 and height > 0):
        raise _fail("SCENE-MALFORMED", "grid width and height must be positive integers")
    if isinstance(cell, bool) or not isinstance(cell, (int, float)) or not cell > 0:
        raise _fail("SCENE-MALFORMED", "grid cell_size_m must be a positive number")
    obstacles_raw = g.get("obstacles", [])
    if not isinstance(obstacles_raw, list):
        raise _fail("SCENE-MALFORMED", "grid obstacles must be a list of [x, y]")
    obstacles = [_pos(o, "obstacle") for o in obstacles_raw]
    grid = Grid(width, height, float(cell), frozenset(obstacles))
    for o in obstacles:
        if not grid.in_bounds(o):
            raise _fail("OUT-OF-BOUNDS", f"obstacle {list(o)} outside the {width}x{height} grid")

    groups: dict[str, dict[str, GridPos]] = {"characters": {}, "objects": {}}
    seen: set[str] = set()
    for group, table in groups.items():
        entries = doc.get(group, [])
        if not isinstance(entries, list):
            raise _fail("SCENE-MALFORMED", f"'{group}' must be a list")
        for entry in entries:
            if not isinstance(entry, dict) or not isinstance(entry.get("name"), str) or not entry["name"].strip():
                raise _fail("SCENE-MALFORMED", f"every entry of '{group}' needs a non-empty 'name'")
            name = entry["name"]
            pos = _pos(entry.get("pos"), name)
            if name in seen:
                raise _fail("SCENE-DUPLICATE-NAME", f"name {name!r} used more than once")
            if not grid.in_bounds(pos):
                raise _fail("OUT-OF-BOUNDS", f"{name} at {list(pos)} is outside the {width}x{height} grid")
            if pos in grid.obstacles:
                raise _fail("ENTITY-ON-OBSTACLE", f"{name} at {list(pos)} stands on an obstacle")
            seen.add(name)
            table[name] = pos
    return Scene(grid, groups["characters"], groups["objects"])


def load_scene(text: str) -> Scene:
    """Parse and validate a scene JSON document.

    Raises:
        DocumentError: with code SCENE-MALFORMED, SCENE-DUPLICATE-NAME,
            ENTITY-ON-OBSTACLE or OUT-OF-BOUNDS.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail("SCENE-MALFORMED", f"invalid JSON: {exc.msg}", SourceSpan(exc.lineno, exc.colno)) from None
    return scene_from_document(doc)


def scene_to_document(scene: Scene) -> dict[str, Any]:
    return {
        "grid": {
            "width": scene.grid.width,
            "height": scene.grid.height,
            "cell_size_m": scene.grid.cell_size_m,
            "obstacles": [list(p) for p in sorted(scene.grid.obstacles, key=lambda p: (p.y, p.x))],
        },
        "characters": [{"name": n, "pos": list(p)} for n, p in scene.characters.items()],
        "objects": [{"name": n, "pos": list(p)} for n, p in scene.objects.items()],
    }
