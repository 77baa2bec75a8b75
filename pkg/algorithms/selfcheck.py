"""Exact verification of the built-in lattice constants and witness tables."""

from __future__ import annotations

import logging
from typing import Sequence

from algorithms.witness import BUNDLE_TABLE, E8_COMBINATIONS, h_sublattice
from core.errors import CovermapError
from data import lattices
from model.lattice import GramForm

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[int]]


class CheckTracker:
    def __init__(self):
        self.names: list[str] = []
        self.passed: list[bool] = []
        self.details: list[str] = []

    def update(self, name: str, passed: bool, detail: str = ""):
        self.names.append(name)
        self.passed.append(bool(passed))
        self.details.append(detail)
        if not passed:
            logger.warning("self-check %s failed: %s", name, detail)

    @property
    def ok(self) -> bool:
        return all(self.passed)

    def failures(self) -> list[str]:
        return [n for n, p in zip(self.names, self.passed) if not p]

    def summary(self) -> dict:
        return {
            "checks": len(self.names),
            "passed": sum(self.passed),
            "failed": self.failures(),
        }

    def lines(self) -> list[str]:
        out = []
        for name, passed, detail in zip(self.names, self.passed, self.details):
            out.append(f"{'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail and not passed else ""))
        out.append(f"{sum(self.passed)}/{len(self.names)} checks passed")
        return out


def _scalar(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(k if i == j else 0 for j in range(n)) for i in range(n))


def _columns(g: Matrix, coeffs: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    return [tuple(sum(g[r][c] * row[c] for c in range(8)) for r in range(8)) for row in coeffs]


def _gram_check(tracker: CheckTracker, name: str, form: GramForm, vectors, expected) -> None:
    actual = form.gram_of(vectors)
    tracker.update(name, actual == expected, f"got {[list(r) for r in actual]}")


def run_selfcheck(a8: Matrix | None = None, g: Matrix | None = None) -> CheckTracker:
    """Recompute every constant relation; a8 and g default to the built-in matrices."""
    tracker = CheckTracker()
    a8 = lattices.A8 if a8 is None else a8
    g = lattices.G if g is None else g
    try:
        e8 = GramForm(a8, "e8")
    except CovermapError as exc:
        tracker.update("A8 is a valid Gram matrix", False, str(exc))
        return tracker
    tracker.update("A8 has diagonal 2", all(e8.entries[i][i] == 2 for i in range(8)), f"diagonal of {e8}")
    tracker.update(
        "A8 is even unimodular positive definite",
        e8.is_even and e8.is_unimodular and e8.signature_pos == 8,
        f"det {e8.determinant}, signature ({e8.signature_pos},{e8.signature_neg}), {e8.parity}",
    )
    for k in sorted(E8_COMBINATIONS):
        name = "G^T A8 G = 2*I8" if k == 2 else f"E8 frame <{k}> has Gram {k}*I8"
        _gram_check(tracker, name, e8, _columns(g, E8_COMBINATIONS[k]), _scalar(k, 8))
    for k in (4, 6):
        try:
            h_sublattice(k)
        except CovermapError as exc:
            tracker.update(f"H carries <{k}> + <-{k}>", False, str(exc))
        else:
            tracker.update(f"H carries <{k}> + <-{k}>", True)
    odd, even = GramForm(((1, 0), (0, -1)), "odd"), GramForm(lattices.H, "even")
    for (parity, n, d), (phi1, phi2) in sorted(BUNDLE_TABLE.items()):
        form = odd if parity == "odd" else even
        got = (form.pair(phi1, phi1), form.pair(phi1, phi2), form.pair(phi2, phi2))
        tracker.update(
            f"bundle row {parity} n={n} d={d}",
            got == (n * d, d, 0),
            f"(phi1.phi1, phi1.phi2, phi2.phi2) = {got}, expected {(n * d, d, 0)}",
        )
    logger.info("self-check: %s", tracker.summary())
    return tracker
