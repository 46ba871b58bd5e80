"""Sample character state from a timeline at arbitrary times."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Mapping

from .config import EngineConfig
from .scene import Scene
from .timeline import CHANNELS, Timeline

IDLE = "idle"
DEFAULT_FACING = (1.0, 0.0)
# tolerance for deciding whether total_s * fps lands on a whole frame
_FRAME_EPS = 1e-9


class FrameRangeError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterState:
    pos: tuple[float, float]
    facing: tuple[float, float]
    active: Mapping[str, str]


@dataclass(frozen=True)
class Frame:
    t_s: float
    characters: Mapping[str, CharacterState]


def _unit(dx: float, dy: float) -> tuple[float, float] | None:
    norm = math.hypot(dx, dy)
    if norm == 0:
        return None
    return (dx / norm, dy / norm)


def _on_track(track, t: float) -> tuple[tuple[float, float], tuple[float, float] | None]:
    """Position and heading at ``t`` on a timed polyline (clamped to its ends)."""
    times = [p[0] for p in track]
    if t >= times[-1]:
        a, b = track[-2], track[-1]
        return (b[1], b[2]), _unit(b[1] - a[1], b[2] - a[2])
    i = max(0, bisect_right(times, t) - 1)
    a, b = track[i], track[i + 1]
    frac = (t - a[0]) / (b[0] - a[0])
    pos = (a[1] + (b[1] - a[1]) * frac, a[2] + (b[2] - a[2]) * frac)
    return pos, _unit(b[1] - a[1], b[2] - a[2])


def sample(timeline: Timeline, scene: Scene, config: EngineConfig | None, t_s: float) -> Frame:
    """State of every scene character at ``t_s``.

    Event intervals are half-open, so at ``t_s == total_s`` all channels are
    idle. Characters keep their last position and heading between events.
    """
    total = timeline.total_s
    if not 0 <= t_s <= total:
        raise FrameRangeError(f"t={t_s} outside [0, {total}]")
    states: dict[str, CharacterState] = {}
    for name, cell in scene.characters.items():
        pos = scene.grid.center_m(cell)
        facing = DEFAULT_FACING
        active = {ch: IDLE for ch in CHANNELS}
        for event in timeline.for_character(name):
            if event.start_s > t_s:
                break
            if event.start_s <= t_s < event.end_s:
                active[event.channel] = event.action
            if event.track is not None:
                pos, heading = _on_track(event.track, t_s)
                if heading is not None:
                    facing = heading
            elif "facing" in event.params:
                facing = tuple(event.params["facing"])
        states[name] = CharacterState(pos, facing, active)
    return Frame(t_s, states)


def frame_times(total_s: float, fps: float) -> list[float]:
    """0, 1/fps, 2/fps, ... up to ``total_s``, always ending on ``total_s``."""
    if not fps > 0:
        raise ValueError("fps must be positive")
    scaled = total_s * fps
    whole = math.floor(scaled + _FRAME_EPS)
    times = [min(k / fps, total_s) for k in range(whole + 1)]
    if abs(scaled - round(scaled)) > _FRAME_EPS:
        times.append(total_s)
    else:
        times[-1] = total_s
    return times


def render_frames(timeline: Timeline, scene: Scene, config: EngineConfig | None = None) -> list[Frame]:
    fps = (config or EngineConfig()).fps
    return [sample(timeline, scene, config, t) for t in frame_times(timeline.total_s, fps)]
