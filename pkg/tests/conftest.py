import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chase import Registry, load_scene  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
DIAG_FIXTURES = Path(__file__).parent / "fixtures" / "diagnostics"

_criteria: dict[str, tuple[int, str]] = {}
_results: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    number, title = _criteria[report.nodeid]
    if report.when == "call" or report.outcome != "passed":
        outcome = "PASS" if report.outcome == "passed" else "FAIL"
        previous = _results.get(number, ("PASS", title))[0]
        _results[number] = ("FAIL" if "FAIL" in (previous, outcome) else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        outcome, title = _results[number]
        terminalreporter.write_line(f"criterion {number}: {outcome}  {title}")


@pytest.fixture(scope="session")
def registry():
    return Registry.default()


@pytest.fixture(scope="session")
def one_scene():
    return load_scene((FIXTURES / "scene_one_character.json").read_text())


@pytest.fixture(scope="session")
def two_scene():
    return load_scene((FIXTURES / "scene_two_characters.json").read_text())


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def make_scene(width, height, characters=(), objects=(), obstacles=(), cell=0.5):
    doc = {
        "grid": {"width": width, "height": height, "cell_size_m": cell, "obstacles": [list(o) for o in obstacles]},
        "characters": [{"name": n, "pos": list(p)} for n, p in characters],
        "objects": [{"name": n, "pos": list(p)} for n, p in objects],
    }
    return load_scene(json.dumps(doc))
