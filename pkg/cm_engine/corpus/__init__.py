"""Fixture corpus shipped with the engine: diagram codes (.sg) and presentations (.pres)."""

from __future__ import annotations

from pathlib import Path

from cm_engine.core.errors import ValidationError
from cm_engine.diagram.code import EmbeddingCode
from cm_engine.diagram.parser import parse
from cm_engine.presentation.direct import DirectPresentation, parse_presentation

DATA_DIR = Path(__file__).resolve().parent / "data"

SUFFIXES = {"diagram": ".sg", "presentation": ".pres"}


def list_fixtures(kind: str | None = None) -> list[str]:
    if kind is not None and kind not in SUFFIXES:
        raise ValidationError(f"fixture kind must be one of {sorted(SUFFIXES)}")
    suffixes = [SUFFIXES[kind]] if kind else list(SUFFIXES.values())
    return sorted(p.stem for p in DATA_DIR.iterdir() if p.suffix in suffixes)


def fixture_path(name: str) -> Path:
    for suffix in SUFFIXES.values():
        path = DATA_DIR / f"{name}{suffix}"
        if path.exists():
            return path
    raise ValidationError(f"unknown fixture {name!r}; available: {', '.join(list_fixtures())}")


def load_code(name: str) -> EmbeddingCode:
    path = fixture_path(name)
    if path.suffix != SUFFIXES["diagram"]:
        raise ValidationError(f"fixture {name!r} is not a diagram code")
    return parse(path.read_text(encoding="utf-8"), source=path.name)


def load_presentation(name: str) -> DirectPresentation:
    path = fixture_path(name)
    if path.suffix != SUFFIXES["presentation"]:
        raise ValidationError(f"fixture {name!r} is not a presentation")
    return parse_presentation(path.read_text(encoding="utf-8"), source=path.name)
