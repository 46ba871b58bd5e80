"""Turn a task matrix into a timeline.

Rows run under barrier semantics: row r starts when every event of row r-1
has ended. Inside a row each character's command starts at the row start and
is compiled independently; targets are looked up at their row-start cells.
"""

from __future__ import annotations

import math

from .config import EngineConfig
from .diagnostics import Diagnostic, ScheduleError, WARNING
from .pathfinding import SQRT2, NavigationError, Path, approach_cell, find_path
from .registry import repetitions
from .resolver import Interaction, Locomotion, ResolvedCommand, Solo, TaskMatrix
from .scene import GridPos, Scene
from .timeline import APPROACH, BASE, OVERLAY, Timeline, TimelineEvent


def _facing(scene: Scene, src: GridPos, dst: GridPos) -> list[float] | None:
    dx, dy = dst[0] - src[0], dst[1] - src[1]
    norm = math.hypot(dx, dy)
    if norm == 0:
        return None
    return [dx / norm, dy / norm]


def _track(scene: Scene, path: Path, start_s: float, speed: float) -> tuple[tuple[float, float, float], ...]:
    cs = scene.grid.cell_size_m
    points = []
    straight = diagonal = 0
    prev = None
    for cell in path.waypoints:
        if prev is not None:
            if cell.x != prev.x and cell.y != prev.y:
                diagonal += 1
            else:
                straight += 1
        # same formula as Path.length_m so the last time equals the event end exactly
        t = start_s + (straight + diagonal * SQRT2) * cs / speed
        points.append((t, *scene.grid.center_m(cell)))
        prev = cell
    return tuple(points)


class _Job:
    def __init__(self, matrix: TaskMatrix, scene: Scene, config: EngineConfig) -> None:
        self.matrix = matrix
        self.scene = scene
        self.config = config
        self.positions: dict[str, GridPos] = dict(scene.characters)
        self.events: list[TimelineEvent] = []
        self.warnings: list[Diagnostic] = []

    def fail(self, cmd: ResolvedCommand, exc: NavigationError) -> ScheduleError:
        d = exc.diagnostics[0]
        return ScheduleError([Diagnostic(d.code, f"row {cmd.row}: {cmd.character}: {d.message}", cmd.kind.span)])

    def warn(self, code: str, message: str, span) -> None:
        self.warnings.append(Diagnostic(code, message, span, severity=WARNING))

    def target_cell(self, name: str, snapshot: dict[str, GridPos]) -> GridPos:
        return snapshot[name] if name in snapshot else self.scene.objects[name]

    def walk(
        self, cmd: ResolvedCommand, target: str, style: str, start_s: float, snapshot, role: str
    ) -> tuple[float, GridPos]:
        """Move next to ``target``; returns (end time, final cell)."""
        here = self.positions[cmd.character]
        try:
            goal = approach_cell(self.scene, target, here, snapshot)
            path = find_path(self.scene, here, goal)
        except NavigationError as exc:
            raise self.fail(cmd, exc) from None
        if len(path.waypoints) == 1:
            return start_s, here
        speed = self.config.speeds[style]
        track = _track(self.scene, path, start_s, speed)
        params = {
            "style": style,
            "target": target,
            "goal": list(goal),
            "length_m": path.length_m,
        }
        if role == APPROACH:
            params["approach_for"] = cmd.kind.module.keyword
        self.events.append(
            TimelineEvent(cmd.character, "body", style, start_s, track[-1][0], cmd.row, role, params, track)
        )
        return track[-1][0], goal

    def command(self, cmd: ResolvedCommand, start_s: float, snapshot: dict[str, GridPos]) -> tuple[float, GridPos]:
        kind = cmd.kind
        here = self.positions[cmd.character]
        if isinstance(kind, Solo):
            end = start_s + kind.duration_s
            params = {
                "part": kind.part,
                "duration_s": kind.duration_s,
                "repetitions": repetitions(kind.action, kind.duration_s),
            }
            if kind.facing_target is not None:
                params["facing_target"] = kind.facing_target
                facing = _facing(self.scene, here, self.target_cell(kind.facing_target, snapshot))
                if facing is not None:
                    params["facing"] = facing
            self.events.append(
                TimelineEvent(cmd.character, kind.channel, kind.action.keyword, start_s, end, cmd.row, BASE, params)
            )
            return end, here

        if isinstance(kind, Locomotion):
            self.check_overlay(cmd)
            end, cell = self.walk(cmd, kind.target, kind.style, start_s, snapshot, BASE)
            if end == start_s:
                self.warn("NO-MOVEMENT", f"{cmd.character} is already next to {kind.target}", kind.span)
            self.overlay(cmd, start_s, end, cell)
            return end, cell

        assert isinstance(kind, Interaction)
        self.check_overlay(cmd)
        target_cell = self.target_cell(kind.target, snapshot)
        cell = here
        t = start_s
        if max(abs(here.x - target_cell.x), abs(here.y - target_cell.y)) != 1:
            t, cell = self.walk(cmd, kind.target, "walk", start_s, snapshot, APPROACH)
        end = t + kind.duration_s
        params = {
            "target": kind.target,
            "part": kind.part,
            "duration_s": kind.duration_s,
            "repetitions": repetitions(kind.module, kind.duration_s),
        }
        facing = _facing(self.scene, cell, target_cell)
        if facing is not None:
            params["facing"] = facing
        self.events.append(
            TimelineEvent(cmd.character, kind.channel, kind.module.keyword, t, end, cmd.row, BASE, params)
        )
        self.overlay(cmd, start_s, end, cell)
        return end, cell

    def check_overlay(self, cmd: ResolvedCommand) -> None:
        ov = cmd.overlay
        if ov is None:
            return
        used = {"body"}
        if isinstance(cmd.kind, Interaction):
            used.add(cmd.kind.channel)
        if ov.channel in used:
            raise ScheduleError(
                [
                    Diagnostic(
                        "OVERLAY-CHANNEL-CONFLICT",
                        f"row {cmd.row}: {cmd.character}: {ov.action.keyword} on {ov.channel} "
                        "collides with the base command",
                        ov.span,
                    )
                ]
            )

    def overlay(self, cmd: ResolvedCommand, start_s: float, base_end: float, cell: GridPos) -> None:
        ov = cmd.overlay
        if ov is None or base_end <= start_s:
            return
        span = base_end - start_s
        if ov.explicit_duration:
            if ov.duration_s > span:
                self.warn(
                    "OVERLAY-CLIPPED",
                    f"{ov.action.keyword} asked for {ov.duration_s:g} s but its base lasts {span:.6f} s",
                    ov.span,
                )
                end = base_end
            else:
                end = min(start_s + ov.duration_s, base_end)
        elif ov.action.repeat_policy == "once":
            end = min(start_s + ov.action.default_duration_s, base_end)
        else:
            end = base_end
        params = {
            "part": ov.part,
            "duration_s": end - start_s,
            "repetitions": repetitions(ov.action, end - start_s),
        }
        if ov.facing_target is not None:
            params["facing_target"] = ov.facing_target
        self.events.append(
            TimelineEvent(cmd.character, ov.channel, ov.action.keyword, start_s, end, cmd.row, OVERLAY, params)
        )

    def run(self) -> Timeline:
        row_start = 0.0
        for row in self.matrix.rows:
            snapshot = dict(self.positions)
            row_end = row_start
            moves: dict[str, GridPos] = {}
            for cmd in row:
                end, cell = self.command(cmd, row_start, snapshot)
                moves[cmd.character] = cell
                row_end = max(row_end, end)
            self.positions.update(moves)
            row_start = row_end
        return Timeline(tuple(self.events), tuple(self.warnings))


def schedule(matrix: TaskMatrix, scene: Scene, config: EngineConfig | None = None) -> Timeline:
    """Compile ``matrix`` into a timeline.

    Raises:
        ScheduleError: UNREACHABLE, NO-APPROACH or OVERLAY-CHANNEL-CONFLICT,
            located at the offending command.
    """
    return _Job(matrix, scene, config or EngineConfig()).run()
