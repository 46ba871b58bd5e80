"""Command-line entry point: ``chase check | build | run``.

Exit codes: 0 success, 1 compile diagnostics, 2 usage or I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .config import EngineConfig
from .diagnostics import ChaseError, Diagnostic
from .documents import frames_document, timeline_document
from .motion import render_frames
from .parser import parse_source
from .registry import Registry
from .resolver import resolve
from .scene import Scene, load_scene
from .scheduler import schedule
from .timeline import Timeline

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


class _IOFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"chase: cannot read {path}: {exc}") from None


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename over ``path``."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _report(diags: Sequence[Diagnostic], file: str) -> None:
    for d in diags:
        print(d.render(d.file or file), file=sys.stderr)


def _load_inputs(args: argparse.Namespace) -> tuple[Registry, EngineConfig]:
    registry = Registry.default()
    if args.registry:
        try:
            registry = Registry.from_json(_read(args.registry))
        except ChaseError as exc:
            raise _Rejected(exc.diagnostics, args.registry) from None
    config = EngineConfig.from_registry(registry)
    if args.config:
        try:
            config = config.with_json(_read(args.config))
        except ChaseError as exc:
            raise _Rejected(exc.diagnostics, args.config) from None
    return registry, config


class _Rejected(Exception):
    def __init__(self, diagnostics, file: str) -> None:
        super().__init__(file)
        self.diagnostics = diagnostics
        self.file = file


def _scene(path: str) -> Scene:
    try:
        return load_scene(_read(path))
    except ChaseError as exc:
        raise _Rejected(exc.diagnostics, path) from None


def _compile(args: argparse.Namespace) -> tuple[Timeline, Scene, EngineConfig]:
    registry, config = _load_inputs(args)
    scene = _scene(args.scene)
    source = _read(args.script)
    try:
        matrix = resolve(parse_source(source), registry, scene)
        timeline = schedule(matrix, scene, config)
    except ChaseError as exc:
        raise _Rejected(exc.diagnostics, args.script) from None
    _report(timeline.warnings, args.script)
    return timeline, scene, config


def cmd_check(args: argparse.Namespace) -> int:
    if args.scene:
        _compile(args)
        return EXIT_OK
    source = _read(args.script)
    try:
        parse_source(source)
    except ChaseError as exc:
        raise _Rejected(exc.diagnostics, args.script) from None
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    timeline, _, _ = _compile(args)
    write_atomic(args.out, timeline_document(timeline))
    print(f"{len(timeline.events)} events, {timeline.total_s:.6f} total seconds")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    timeline, scene, config = _compile(args)
    if args.fps is not None:
        config = EngineConfig(config.speeds, args.fps)
    frames = render_frames(timeline, scene, config)
    write_atomic(args.out, frames_document(frames))
    print(f"{len(frames)} frames at {config.fps:g} fps, {timeline.total_s:.6f} total seconds")
    return EXIT_OK


def _positive_fps(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or value != value or value == float("inf"):
        raise argparse.ArgumentTypeError("fps must be a positive number")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chase", description="Compile CHASE animation scripts.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", help="registry JSON replacing the built-in action catalogue")
    common.add_argument("--config", help="config JSON overriding style speeds and fps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="parse a script, and resolve it when a scene is given")
    p.add_argument("script")
    p.add_argument("--scene")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", parents=[common], help="write the timeline document")
    p.add_argument("script")
    p.add_argument("--scene", required=True)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", parents=[common], help="write one frame record per line")
    p.add_argument("script")
    p.add_argument("--scene", required=True)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--fps", type=_positive_fps, default=None, help="frames per second (default 30)")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except _Rejected as exc:
        _report(exc.diagnostics, exc.file)
        return EXIT_DIAGNOSTICS
    except OSError as exc:
        print(f"chase: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
