import json
import random

import pytest

from chase import compile_script
from chase.config import EngineConfig
from chase.diagnostics import ScheduleError
from chase.parser import parse_source
from chase.resolver import TaskMatrix, resolve
from chase.scene import load_scene
from chase.scheduler import schedule

from conftest import fixture_text, make_scene
from oracles import FUZZ_SCENE, channel_overlaps, overlay_escapes, random_valid_script


def build(source, scene, **kw):
    return compile_script(source, scene, **kw)


def test_empty_matrix(one_scene):
    tl = schedule(TaskMatrix(), one_scene)
    assert tl.events == () and tl.total_s == 0


def test_walk_duration_from_path_length(registry):
    # stops beside the flag: 14 straight cells of 0.5 m = 7.0 m at 1.4 m/s
    scene = make_scene(16, 1, characters=[("Rudy", (0, 0))], objects=[("flag", (15, 0))])
    tl = build("goTo(flag, walk)", scene)
    (ev,) = tl.events
    assert ev.params["length_m"] == 7.0
    assert (ev.start_s, ev.end_s) == (0.0, 5.0)


def test_run_uses_configured_speed():
    scene = make_scene(16, 1, characters=[("Rudy", (0, 0))], objects=[("flag", (15, 0))])
    config = EngineConfig({"walk": 1.4, "run": 3.5})
    (ev,) = build("goTo(flag, run)", scene, config=config).events
    assert ev.end_s == 2.0


def test_alg1_sequence(one_scene):
    tl = build(fixture_text("alg1.chase"), one_scene)
    base = tl.base_events()
    assert [e.row for e in base] == [1, 2, 3, 4, 5]
    assert [e.action for e in base] == ["wave hand", "walk", "punch", "jump", "wave hand"]
    for a, b in zip(base, base[1:]):
        assert b.start_s == a.end_s
    (ov,) = [e for e in tl.events if e.role == "overlay"]
    assert ov.channel == "handL"
    assert (ov.start_s, ov.end_s) == (base[1].start_s, base[1].end_s)
    assert tl.warnings == ()


def test_alg2_characters_one_after_the_other(two_scene):
    tl = build(fixture_text("alg2.chase"), two_scene)
    a, b = tl.events
    assert (a.character, b.character) == ("characterA", "characterB")
    assert b.start_s == a.end_s


def test_alg3_barrier(two_scene):
    tl = build(fixture_text("alg3.chase"), two_scene)
    walk_a, run_b = [e for e in tl.events if e.row == 1]
    punch = next(e for e in tl.events if e.action == "punch")
    assert walk_a.start_s == run_b.start_s == 0.0
    assert punch.start_s == max(walk_a.end_s, run_b.end_s)
    assert punch.channel == "handR"
    assert not [e for e in tl.events if e.role == "approach"]


def test_positions_persist_across_rows(one_scene):
    tl = build("goTo(ball)\ngoTo(ball)", one_scene)
    assert len(tl.events) == 1
    assert [w.code for w in tl.warnings] == ["NO-MOVEMENT"]


def test_interaction_inserts_approach_walk(one_scene):
    tl = build("interactWith(ball, kick, footL)", one_scene)
    walk, kick = tl.events
    assert (walk.role, walk.channel, walk.action) == ("approach", "body", "walk")
    assert (kick.channel, kick.start_s) == ("footL", walk.end_s)
    assert kick.params["repetitions"] == 1


def test_overlay_loops_over_base(one_scene):
    tl = build("goTo(ball, walk).do(wave hand, handR)", one_scene)
    walk, wave = tl.events
    assert (wave.start_s, wave.end_s) == (walk.start_s, walk.end_s)
    assert wave.params["repetitions"] == 2  # 2.796 s of a 2 s cycle


def test_once_overlay_plays_single_cycle(one_scene):
    tl = build("goTo(ball, walk).do(kick, footL)", one_scene)
    walk, kick = tl.events
    assert kick.start_s == walk.start_s
    assert kick.end_s == walk.start_s + 1.0


def test_short_explicit_overlay(one_scene):
    tl = build("goTo(ball, walk).do(wave hand, handR, 1.5)", one_scene)
    wave = tl.events[1]
    assert wave.end_s - wave.start_s == 1.5
    assert tl.warnings == ()


def test_long_overlay_clipped_with_warning(one_scene):
    tl = build("goTo(ball, walk).do(wave hand, handR, 30)", one_scene)
    walk, wave = tl.events
    assert wave.end_s == walk.end_s
    assert [w.code for w in tl.warnings] == ["OVERLAY-CLIPPED"]


def test_overlay_on_interaction_spans_approach(one_scene):
    tl = build("interactWith(ball, punch, handR).do(wave hand, handL)", one_scene)
    roles = {e.role: e for e in tl.events}
    walk, punch, wave = roles["approach"], roles["base"], roles["overlay"]
    assert wave.channel == "handL"
    assert (wave.start_s, wave.end_s) == (walk.start_s, punch.end_s)


@pytest.mark.parametrize(
    "source",
    ["interactWith(ball, punch, handR).do(wave hand, handR)", "goTo(ball).do(jump)"],
)
def test_overlay_channel_conflict(one_scene, source):
    with pytest.raises(ScheduleError) as info:
        build(source, one_scene)
    assert info.value.codes == ["OVERLAY-CHANNEL-CONFLICT"]


def test_unreachable_reported_with_row():
    scene = make_scene(
        6, 4, characters=[("Rudy", (0, 0))], objects=[("ball", (4, 2))],
        obstacles=[(2, 0), (2, 1), (2, 2), (2, 3)],
    )
    with pytest.raises(ScheduleError) as info:
        build("do(jump)\ngoTo(ball)", scene)
    d = info.value.diagnostics[0]
    assert d.code == "UNREACHABLE"
    assert d.span.line == 2
    assert "row 2" in d.message


def test_facing_target_only_records_heading(one_scene):
    (ev,) = build("do(wave hand, ball)", one_scene).events
    assert ev.params["facing_target"] == "ball"
    dx, dy = ev.params["facing"]
    assert abs(dx * dx + dy * dy - 1) < 1e-12
    assert ev.track is None


def test_target_positions_taken_at_row_start(two_scene):
    # B walks away in the same row; A still heads for B's row-start cell
    source = (
        "tasks[1][1] = interactWith(characterB, punch).characterName(characterA)\n"
        "tasks[1][2] = goTo(ball).characterName(characterB)"
    )
    tl = build(source, two_scene)
    punch = next(e for e in tl.events if e.action == "punch")
    assert punch.start_s == 0.0  # A starts adjacent to B's start cell


def _position_consistency(tl, scene):
    current = {n: scene.grid.center_m(p) for n, p in scene.characters.items()}
    for ev in sorted((e for e in tl.events if e.track), key=lambda e: e.start_s):
        assert ev.track[0][1:] == current[ev.character]
        current[ev.character] = ev.track[-1][1:]


def _sequential(tl):
    by_char = {}
    for e in tl.events:
        if e.role != "overlay":
            by_char.setdefault(e.character, []).append(e)
    for events in by_char.values():
        events.sort(key=lambda e: (e.row, e.start_s))
        for a, b in zip(events, events[1:]):
            assert b.start_s >= a.start_s
            if b.row > a.row:
                assert b.start_s >= a.end_s


def test_properties_over_random_scripts():
    scene = load_scene(json.dumps(FUZZ_SCENE))
    rng = random.Random(2024)
    for _ in range(120):
        source = random_valid_script(rng)
        tl = build(source, scene)
        assert not channel_overlaps(tl), source
        assert not overlay_escapes(tl), source
        _position_consistency(tl, scene)
        _sequential(tl)
        assert build(source, scene) == tl


def test_row_barrier_includes_every_character(two_scene):
    source = (
        "tasks[1][1] = do(wave hand, 5).characterName(characterA)\n"
        "tasks[1][2] = do(jump).characterName(characterB)\n"
        "tasks[2][2] = do(jump).characterName(characterB)"
    )
    tl = build(source, two_scene)
    second = [e for e in tl.events if e.row == 2]
    assert second[0].start_s == 5.0


def test_explicit_duration_fidelity(one_scene):
    tl = build("do(knock, 4)\ndo(wave hand, handL, 3)", one_scene)
    knock, wave = tl.events
    assert knock.duration_s == 4.0 and knock.params["repetitions"] == 3  # ceil(4 / 1.5)
    assert round(wave.duration_s, 9) == 3.0 and wave.params["repetitions"] == 2


def test_schedule_is_pure(one_scene, registry):
    m = resolve(parse_source(fixture_text("alg1.chase")), registry, one_scene)
    assert schedule(m, one_scene) == schedule(m, one_scene)
