"""Lattice constants and the bundled example corpus."""

from __future__ import annotations

import json
from pathlib import Path

from core.errors import InputError

CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.stem for p in CORPUS_DIR.glob("*.json"))


def load_corpus(name: str) -> dict:
    """Raw JSON document of a bundled example, e.g. load_corpus("e8h")."""
    path = CORPUS_DIR / f"{name}.json"
    if not path.is_file():
        raise InputError("input", f"no corpus entry {name!r}; available: {', '.join(corpus_names())}")
    with path.open(encoding="utf-8") as fh:
        return json.load(fh)
