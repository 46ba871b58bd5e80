import json

from chase import compile_script
from chase.documents import dumps, frames_document, timeline_document
from chase.motion import render_frames
from chase.timeline import Timeline

from conftest import fixture_text


def test_dumps_fixed_point():
    assert dumps({"a": 1.0, "b": -0.0, "c": [2, "x"], "d": None}) == '{"a": 1.000000, "b": 0.000000, "c": [2, "x"], "d": null}'
    assert dumps(1 / 3) == "0.333333"


def test_empty_timeline_document():
    assert timeline_document(Timeline()) == '{\n  "total_s": 0.000000,\n  "events": []\n}\n'


def test_timeline_document_schema(one_scene):
    tl = compile_script(fixture_text("alg1.chase"), one_scene)
    text = timeline_document(tl)
    doc = json.loads(text)
    assert doc["total_s"] == round(tl.total_s, 6)
    events = doc["events"]
    assert len(events) == 6
    keys = [(e["start_s"], e["character"], ["body", "handR", "handL", "footR", "footL"].index(e["channel"])) for e in events]
    assert keys == sorted(keys)
    walk = next(e for e in events if e["action"] == "walk")
    assert list(walk) == ["character", "channel", "action", "start_s", "end_s", "params", "track"]
    assert "track" not in events[0]
    assert walk["params"]["row"] == 2 and walk["params"]["role"] == "base"
    assert "\r" not in text and text.endswith("}\n")
    assert '"start_s": 3.000000' in text


def test_frames_document_lines(one_scene):
    tl = compile_script("do(jump)", one_scene)
    frames = render_frames(tl, one_scene)
    lines = frames_document(frames).splitlines()
    assert len(lines) == 31
    first = json.loads(lines[0])
    assert first["t_s"] == 0
    rudy = first["characters"]["Rudy"]
    assert rudy["active"]["body"] == "jump" and rudy["active"]["handR"] == "idle"
    assert rudy["pos"] == [0.75, 0.75] and rudy["facing"] == [1, 0]
