"""Shared helpers: corpus locations and a strict parse."""
from __future__ import annotations

from pathlib import Path

from psl import Severity, parse_storyboard

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
BROKEN_DIR = CORPUS_DIR / "broken"


def corpus_paths() -> list[Path]:
    return sorted(CORPUS_DIR.glob("*.psl"))


def broken_paths() -> list[Path]:
    return sorted(BROKEN_DIR.glob("*.psl"))


def parse_ok(text: str):
    """Parse text that must produce a tree and no errors."""
    sb, diagnostics = parse_storyboard(text)
    assert sb is not None, [d.to_dict() for d in diagnostics]
    assert not any(d.severity is Severity.ERROR for d in diagnostics)
    return sb
