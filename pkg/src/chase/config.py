"""Engine settings: gait speeds and frame rate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

from .diagnostics import Diagnostic, DocumentError
from .registry import STYLES, Registry

DEFAULT_FPS = 30.0


@dataclass(frozen=True)
class EngineConfig:
    speeds: Mapping[str, float] = field(default_factory=lambda: {"walk": 1.4, "run": 3.0})
    fps: float = DEFAULT_FPS

    def __post_init__(self) -> None:
        speeds = dict(self.speeds)
        if set(speeds) != set(STYLES):
            raise ValueError(f"speeds must cover exactly {STYLES}")
        if any(not v > 0 for v in speeds.values()):
            raise ValueError("speeds must be positive")
        if not self.fps > 0:
            raise ValueError("fps must be positive")
        object.__setattr__(self, "speeds", MappingProxyType(speeds))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EngineConfig):
            return NotImplemented
        return dict(self.speeds) == dict(other.speeds) and self.fps == other.fps

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.speeds.items())), self.fps))

    @property
    def max_speed(self) -> float:
        return max(self.speeds.values())

    @classmethod
    def from_registry(cls, registry: Registry, fps: float = DEFAULT_FPS) -> "EngineConfig":
        return cls(dict(registry.styles), fps)

    def with_overrides(self, doc: Any) -> "EngineConfig":
        """Apply a config document ``{"styles": {...}, "fps": N}``; both keys optional."""
        try:
            if not isinstance(doc, dict) or set(doc) - {"styles", "fps"}:
                raise ValueError("config takes only 'styles' and 'fps'")
            speeds = dict(self.speeds)
            for name, value in doc.get("styles", {}).items():
                if name not in STYLES:
                    raise ValueError(f"unknown style {name!r}")
                speeds[name] = float(value)
            return EngineConfig(speeds, float(doc.get("fps", self.fps)))
        except (TypeError, ValueError, AttributeError) as exc:
            raise DocumentError([Diagnostic("CONFIG-INVALID", f"invalid config: {exc}")]) from None

    def with_json(self, text: str) -> "EngineConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError([Diagnostic("CONFIG-INVALID", f"invalid JSON: {exc.msg}")]) from None
        return self.with_overrides(doc)
