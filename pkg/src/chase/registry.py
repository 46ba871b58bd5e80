"""Action catalogue: keywords, body parts, motion styles and their defaults.

The shipped registry (``data/registry.json``) holds the actions used by the
bundled scenarios. Its durations are engine defaults, not measured data; a
replacement document with the same schema can be passed with ``--registry``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType
from typing import Any, Mapping

from .diagnostics import Diagnostic, DocumentError

BODY_PARTS = ("handR", "handL", "footR", "footL")
WHOLE_BODY = "wholeBody"
STYLES = ("walk", "run")

SOLO = "solo-action"
INTERACTION = "interaction-module"
ONCE = "once"
LOOP = "loop-until-duration"

# Slack for floating-point ratios such as 0.3 / 0.1 when counting loop cycles.
_CYCLE_EPS = 1e-9


def normalize_keyword(text: str) -> str:
    return " ".join(text.split()).lower()


def body_part(text: str) -> str | None:
    """Canonical body part for ``text`` (case-insensitive), else None."""
    lowered = text.lower()
    for part in BODY_PARTS:
        if part.lower() == lowered:
            return part
    return None


def motion_style(text: str) -> str | None:
    lowered = text.lower()
    return lowered if lowered in STYLES else None


def edit_distance(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


@dataclass(frozen=True)
class ActionDef:
    keyword: str
    kind: str
    allowed_parts: frozenset[str]
    default_part: str
    default_duration_s: float
    repeat_policy: str

    def __post_init__(self) -> None:
        if self.kind not in (SOLO, INTERACTION):
            raise ValueError(f"{self.keyword}: unknown kind {self.kind!r}")
        if not self.allowed_parts or not self.allowed_parts <= set(BODY_PARTS) | {WHOLE_BODY}:
            raise ValueError(f"{self.keyword}: bad allowed_parts {sorted(self.allowed_parts)}")
        if self.default_part not in self.allowed_parts:
            raise ValueError(f"{self.keyword}: default_part {self.default_part!r} not allowed")
        if not self.default_duration_s > 0:
            raise ValueError(f"{self.keyword}: default_duration_s must be positive")
        if self.repeat_policy not in (ONCE, LOOP):
            raise ValueError(f"{self.keyword}: unknown repeat_policy {self.repeat_policy!r}")


def repetitions(action: ActionDef, duration_s: float) -> int:
    """Number of clip cycles played in ``duration_s`` seconds."""
    if action.repeat_policy == ONCE:
        return 1
    return max(1, math.ceil(duration_s / action.default_duration_s - _CYCLE_EPS))


def default_behavior(action: ActionDef, duration_s: float | None = None) -> tuple[float, str, int]:
    """(duration, body part, repetitions) when only the keyword and maybe a duration are given.

    A ``once`` action plays a single cycle; a looping one repeats its cycle
    until the requested duration is filled.
    """
    duration = action.default_duration_s if duration_s is None else float(duration_s)
    return duration, action.default_part, repetitions(action, duration)


class UnknownAction(LookupError):
    def __init__(self, keyword: str, hint: str | None) -> None:
        self.keyword = keyword
        self.hint = hint
        msg = f"unknown action {keyword!r}"
        if hint:
            msg += f" (did you mean {hint!r}?)"
        super().__init__(msg)


class Registry:
    """Immutable keyword -> ActionDef map plus motion style speeds."""

    def __init__(self, actions: list[ActionDef], styles: Mapping[str, float]) -> None:
        table: dict[str, ActionDef] = {}
        for action in actions:
            key = normalize_keyword(action.keyword)
            if key in table:
                raise ValueError(f"duplicate action keyword {action.keyword!r}")
            table[key] = action
        self._actions = MappingProxyType(table)
        self.styles = MappingProxyType(dict(styles))

    def __iter__(self):
        return iter(self._actions.values())

    def __len__(self) -> int:
        return len(self._actions)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Registry):
            return NotImplemented
        return dict(self._actions) == dict(other._actions) and dict(self.styles) == dict(other.styles)

    @property
    def keywords(self) -> list[str]:
        return [a.keyword for a in self._actions.values()]

    def lookup(self, keyword: str) -> ActionDef:
        key = normalize_keyword(keyword)
        try:
            return self._actions[key]
        except KeyError:
            raise UnknownAction(keyword, self.nearest(key)) from None

    def nearest(self, keyword: str, max_distance: int = 2) -> str | None:
        key = normalize_keyword(keyword)
        best: tuple[int, str] | None = None
        for known, action in self._actions.items():
            d = edit_distance(key, known)
            if d <= max_distance and (best is None or d < best[0]):
                best = (d, action.keyword)
        return best[1] if best else None

    @classmethod
    def from_document(cls, doc: Any) -> "Registry":
        try:
            actions = [
                ActionDef(
                    keyword=str(entry["keyword"]),
                    kind=entry["kind"],
                    allowed_parts=frozenset(entry["allowed_parts"]),
                    default_part=entry["default_part"],
                    default_duration_s=float(entry["default_duration_s"]),
                    repeat_policy=entry["repeat_policy"],
                )
                for entry in doc["actions"]
            ]
            styles = {str(k): float(v) for k, v in doc["styles"].items()}
            if set(styles) != set(STYLES) or any(not v > 0 for v in styles.values()):
                raise ValueError("styles must give a positive speed for exactly walk and run")
            return cls(actions, styles)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DocumentError([Diagnostic("REGISTRY-INVALID", f"invalid registry: {exc}")]) from None

    @classmethod
    def from_json(cls, text: str) -> "Registry":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError([Diagnostic("REGISTRY-INVALID", f"invalid JSON: {exc.msg}")]) from None
        return cls.from_document(doc)

    @classmethod
    def default(cls) -> "Registry":
        text = resources.files("chase").joinpath("data/registry.json").read_text(encoding="utf-8")
        return cls.from_json(text)
