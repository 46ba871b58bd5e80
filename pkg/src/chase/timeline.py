"""Scheduled output: timed events on per-character channels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .diagnostics import Diagnostic

CHANNELS = ("body", "handR", "handL", "footR", "footL")

BASE = "base"
APPROACH = "approach"
OVERLAY = "overlay"


@dataclass(frozen=True)
class TimelineEvent:
    character: str
    channel: str
    action: str
    start_s: float
    end_s: float
    row: int
    role: str = BASE
    params: Mapping[str, Any] = field(default_factory=dict)
    track: tuple[tuple[float, float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}")
        if not 0 <= self.start_s < self.end_s:
            raise ValueError(f"bad interval [{self.start_s}, {self.end_s}]")
        if self.track is not None:
            times = [p[0] for p in self.track]
            if len(times) < 2 or times[0] != self.start_s or times[-1] != self.end_s:
                raise ValueError("track must span the event interval")
            if any(b <= a for a, b in zip(times, times[1:])):
                raise ValueError("track times must increase strictly")

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s

    def sort_key(self) -> tuple[float, str, int]:
        return (self.start_s, self.character, CHANNELS.index(self.channel))


@dataclass(frozen=True)
class Timeline:
    events: tuple[TimelineEvent, ...] = ()
    warnings: tuple[Diagnostic, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(sorted(self.events, key=TimelineEvent.sort_key)))

    @property
    def total_s(self) -> float:
        return max((e.end_s for e in self.events), default=0.0)

    def for_character(self, name: str) -> list[TimelineEvent]:
        return [e for e in self.events if e.character == name]

    def base_events(self) -> list[TimelineEvent]:
        return [e for e in self.events if e.role == BASE]
