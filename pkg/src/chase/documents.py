"""Byte-stable JSON writers for timeline and frame documents.

Floats are always written with six decimals, strings through ``json.dumps``,
and lines end with LF, so identical inputs give identical bytes everywhere.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .motion import Frame
from .timeline import Timeline, TimelineEvent

_EVENT_KEYS = ("character", "channel", "action", "start_s", "end_s", "params", "track")


def _num(x: float) -> str:
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


def dumps(value: Any) -> str:
    """Compact JSON with fixed-point floats; dict keys keep insertion order."""
    if value is None or isinstance(value, bool):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _num(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{dumps(str(k))}: {dumps(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def event_record(event: TimelineEvent) -> dict[str, Any]:
    params = dict(event.params)
    params["row"] = event.row
    params["role"] = event.role
    record: dict[str, Any] = {
        "character": event.character,
        "channel": event.channel,
        "action": event.action,
        "start_s": float(event.start_s),
        "end_s": float(event.end_s),
        "params": {k: params[k] for k in sorted(params)},
    }
    if event.track is not None:
        record["track"] = [[float(t), float(x), float(y)] for t, x, y in event.track]
    return record


def timeline_document(timeline: Timeline) -> str:
    lines = ["{", f'  "total_s": {_num(timeline.total_s)},']
    if not timeline.events:
        lines.append('  "events": []')
    else:
        lines.append('  "events": [')
        records = [dumps(event_record(e)) for e in timeline.events]
        lines.extend(f"    {r}," for r in records[:-1])
        lines.append(f"    {records[-1]}")
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def frame_record(frame: Frame) -> dict[str, Any]:
    return {
        "t_s": float(frame.t_s),
        "characters": {
            name: {
                "pos": [float(v) for v in state.pos],
                "facing": [float(v) for v in state.facing],
                "active": dict(state.active),
            }
            for name, state in frame.characters.items()
        },
    }


def frames_document(frames: Iterable[Frame]) -> str:
    return "".join(dumps(frame_record(f)) + "\n" for f in frames)
