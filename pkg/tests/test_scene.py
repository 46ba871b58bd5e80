import json

import pytest

from chase.diagnostics import DocumentError
from chase.scene import GridPos, load_scene, scene_to_document

from conftest import FIXTURES


def doc(**overrides):
    base = {
        "grid": {"width": 5, "height": 4, "cell_size_m": 0.5, "obstacles": [[2, 2]]},
        "characters": [{"name": "Rudy", "pos": [0, 0]}],
        "objects": [],
    }
    base.update(overrides)
    return json.dumps(base)


def code_of(text):
    with pytest.raises(DocumentError) as info:
        load_scene(text)
    return info.value.codes[0]


def test_minimal_scene():
    scene = load_scene(doc())
    assert dict(scene.characters) == {"Rudy": GridPos(0, 0)}
    assert scene.grid.obstacles == {GridPos(2, 2)}


def test_two_character_fixture_has_four_entities():
    scene = load_scene((FIXTURES / "scene_two_characters.json").read_text())
    assert set(scene.characters) | set(scene.objects) == {"characterA", "characterB", "target", "ball"}


def test_cell_size_defaults():
    d = json.loads(doc())
    del d["grid"]["cell_size_m"]
    assert load_scene(json.dumps(d)).grid.cell_size_m == 0.5


def test_entity_on_obstacle():
    assert code_of(doc(characters=[{"name": "Rudy", "pos": [2, 2]}])) == "ENTITY-ON-OBSTACLE"


def test_duplicate_names_across_groups():
    text = doc(objects=[{"name": "Rudy", "pos": [1, 1]}])
    assert code_of(text) == "SCENE-DUPLICATE-NAME"


@pytest.mark.parametrize("pos", [[5, 0], [0, 4], [-1, 0]])
def test_out_of_bounds(pos):
    assert code_of(doc(characters=[{"name": "Rudy", "pos": pos}])) == "OUT-OF-BOUNDS"


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[]",
        json.dumps({"grid": {"width": 0, "height": 3}}),
        json.dumps({"grid": {"width": 3, "height": 3, "cell_size_m": 0}}),
        doc(characters=[{"name": "Rudy", "pos": [1]}]),
        doc(characters=[{"pos": [1, 1]}]),
        doc(characters=[{"name": "Rudy", "pos": [1.5, 1]}]),
    ],
)
def test_malformed(text):
    assert code_of(text) == "SCENE-MALFORMED"


def test_json_error_has_location():
    with pytest.raises(DocumentError) as info:
        load_scene('{\n  "grid": ,\n}')
    span = info.value.diagnostics[0].span
    assert (span.line, span.column) == (2, 11)


def test_document_round_trip():
    scene = load_scene((FIXTURES / "scene_one_character.json").read_text())
    assert load_scene(json.dumps(scene_to_document(scene))) == scene


def test_center_in_metres():
    scene = load_scene(doc())
    assert scene.grid.center_m((1, 2)) == (0.75, 1.25)
