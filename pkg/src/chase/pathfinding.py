"""8-connected grid A* with octile costs and no corner cutting."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Mapping

from .diagnostics import ChaseError, Diagnostic
from .scene import Grid, GridPos, Scene

SQRT2 = math.sqrt(2.0)

# Expansion order: lower y first, then lower x.
NEIGHBOR_STEPS = tuple(sorted(((dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if dx or dy), key=lambda s: (s[1], s[0])))


class NavigationError(ChaseError):
    """UNREACHABLE or NO-APPROACH; carries no source span."""


def step_allowed(grid: Grid, cur: tuple[int, int], step: tuple[int, int]) -> bool:
    nx, ny = cur[0] + step[0], cur[1] + step[1]
    if not grid.passable((nx, ny)):
        return False
    if step[0] and step[1]:
        # no squeezing past an obstacle corner
        if (cur[0] + step[0], cur[1]) in grid.obstacles or (cur[0], cur[1] + step[1]) in grid.obstacles:
            return False
    return True


def octile(a: tuple[int, int], b: tuple[int, int]) -> float:
    dx, dy = abs(a[0] - b[0]), abs(a[1] - b[1])
    return (max(dx, dy) - min(dx, dy)) + min(dx, dy) * SQRT2


def _cost(straight: int, diagonal: int) -> float:
    return straight + diagonal * SQRT2


@dataclass(frozen=True)
class Path:
    waypoints: tuple[GridPos, ...]
    straight_steps: int
    diagonal_steps: int
    cell_size_m: float

    @property
    def cost(self) -> float:
        """Cost in cells (straight 1, diagonal sqrt 2)."""
        return _cost(self.straight_steps, self.diagonal_steps)

    @property
    def length_m(self) -> float:
        return self.cost * self.cell_size_m


def _grid(world: Scene | Grid) -> Grid:
    return world.grid if isinstance(world, Scene) else world


def _search(grid: Grid, start: GridPos, goals: set[GridPos], heuristic) -> tuple[dict, dict, set]:
    """Best-first search with exact (straight, diagonal) step counts.

    Stops once the cheapest goal and every goal tied with it are settled.
    Returns (counts, parents, settled goals).
    """
    bound: float | None = None
    best: dict[GridPos, tuple[int, int]] = {start: (0, 0)}
    parent: dict[GridPos, GridPos] = {}
    reached: set[GridPos] = set()
    heap = [(heuristic(start), 0.0, start.y, start.x)]
    while heap and len(reached) < len(goals):
        f, g, y, x = heapq.heappop(heap)
        if bound is not None and f > bound:
            break
        cur = GridPos(x, y)
        counts = best[cur]
        if g > _cost(*counts) or cur in reached:
            continue  # stale entry
        if cur in goals:
            reached.add(cur)
            bound = g if bound is None else bound
        for step in NEIGHBOR_STEPS:
            if not step_allowed(grid, cur, step):
                continue
            nxt = GridPos(x + step[0], y + step[1])
            cand = (counts[0], counts[1] + 1) if step[0] and step[1] else (counts[0] + 1, counts[1])
            cand_g = _cost(*cand)
            old = best.get(nxt)
            if old is None or cand_g < _cost(*old):
                best[nxt] = cand
                parent[nxt] = cur
                heapq.heappush(heap, (cand_g + heuristic(nxt), cand_g, nxt.y, nxt.x))
    return best, parent, reached


def find_path(world: Scene | Grid, start: tuple[int, int], goal: tuple[int, int]) -> Path:
    """Minimum-cost path from ``start`` to ``goal``.

    Raises:
        ValueError: an endpoint is off-grid or on an obstacle.
        NavigationError: UNREACHABLE when no path exists.
    """
    grid = _grid(world)
    start, goal = GridPos(*start), GridPos(*goal)
    for name, p in (("start", start), ("goal", goal)):
        if not grid.passable(p):
            raise ValueError(f"{name} {tuple(p)} is off-grid or blocked")
    best, parent, reached = _search(grid, start, {goal}, lambda p: octile(p, goal))
    if goal not in reached:
        raise NavigationError([Diagnostic("UNREACHABLE", f"no path from {tuple(start)} to {tuple(goal)}")])
    waypoints = [goal]
    while waypoints[-1] in parent:
        waypoints.append(parent[waypoints[-1]])
    waypoints.reverse()
    straight, diagonal = best[goal]
    return Path(tuple(waypoints), straight, diagonal, grid.cell_size_m)


def neighbors8(pos: tuple[int, int]) -> list[GridPos]:
    return [GridPos(pos[0] + dx, pos[1] + dy) for dx, dy in NEIGHBOR_STEPS]


def approach_cell(
    scene: Scene,
    target: str,
    start: tuple[int, int],
    positions: Mapping[str, tuple[int, int]] | None = None,
) -> GridPos:
    """Free neighbour of ``target`` that is cheapest to reach from ``start``.

    ``positions`` overrides scene positions of characters that have moved.
    Cells holding obstacles or objects are never chosen. Ties go to the
    lower y, then the lower x.

    Raises:
        NavigationError: NO-APPROACH when the target has no free neighbour,
            UNREACHABLE when free neighbours exist but none can be reached.
    """
    center = (positions or {}).get(target) or scene.position(target)
    occupied = set(scene.objects.values())
    candidates = [c for c in neighbors8(center) if scene.grid.passable(c) and c not in occupied]
    if not candidates:
        raise NavigationError([Diagnostic("NO-APPROACH", f"{target} has no free neighbouring cell")])
    counts, _, reached = _search(scene.grid, GridPos(*start), set(candidates), lambda p: 0.0)
    if not reached:
        raise NavigationError([Diagnostic("UNREACHABLE", f"no free cell next to {target} can be reached")])
    return min(reached, key=lambda c: (_cost(*counts[c]), c.y, c.x))
