"""JSON input documents: invariants, branch data and saved reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from core import config as cfg
from core.errors import InputError, InvalidBranchData, InvalidForm
from data import load_corpus
from model.covering import BranchData
from model.lattice import GramForm
from model.manifold import FeasibilityReport, ManifoldInvariants

CORPUS_PREFIX = "corpus:"


def read_document(source: str) -> dict:
    """Load a JSON object from a file path or a corpus:NAME reference."""
    if source.startswith(CORPUS_PREFIX):
        data = load_corpus(source[len(CORPUS_PREFIX):])
    else:
        path = Path(source)
        if not path.is_file():
            raise InputError("input", f"file not found: {source}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InputError("input", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError("input", f"expected a JSON object, got {type(data).__name__}")
    return data


def _require(data: dict, key: str) -> Any:
    if key not in data:
        raise InputError(key, "missing field")
    return data[key]


def parse_form(data: dict, key: str = "gram") -> GramForm:
    rows = _require(data, key)
    if not isinstance(rows, list):
        raise InvalidForm(key, f"expected a list of rows, got {type(rows).__name__}")
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InvalidForm(f"{key}[{i}]", f"expected a list, got {type(row).__name__}")
    return GramForm(rows)


def parse_invariants(data: dict) -> ManifoldInvariants:
    form = parse_form(data)
    return ManifoldInvariants(form, data.get("b1", 0), data.get("free_quotient_rank"))


def parse_branch_data(data: dict) -> BranchData:
    degree = data.get("degree")
    if degree is None:
        raise InvalidBranchData("degree", "missing field")
    points = data.get("points", [])
    if not isinstance(points, list):
        raise InvalidBranchData("points", f"expected a list of pairs, got {type(points).__name__}")
    return BranchData(degree, tuple(tuple(p) if isinstance(p, list) else p for p in points))


def parse_report(document: dict) -> tuple[ManifoldInvariants, list[FeasibilityReport]]:
    """Inverse of utils.render.report_document."""
    schema = document.get("schema")
    if schema != cfg.REPORT_SCHEMA:
        raise InputError("schema", f"expected {cfg.REPORT_SCHEMA!r}, got {schema!r}")
    inv = parse_invariants(_require(document, "input"))
    reports = [FeasibilityReport.from_dict(r, inv.form) for r in _require(document, "reports")]
    return inv, reports
