"""Evaluation, invariants, direct sums and bounded vector search on Gram forms."""

from __future__ import annotations

import enum
import itertools
import logging
from typing import Callable, NamedTuple, Sequence

import numpy as np

from algorithms import exact
from core import config as cfg
from core.errors import BasisMismatch, DimensionMismatch, LatticeError
from model.lattice import BasisChange, GramForm, HomologyClass

logger = logging.getLogger(__name__)


class Invariants(NamedTuple):
    rank: int
    signature_pos: int
    signature_neg: int
    parity: str
    determinant: int


def evaluate(form: GramForm, a: HomologyClass, b: HomologyClass) -> int:
    """aᵀ·G·b."""
    for cls in (a, b):
        if cls.basis_id != form.basis_id:
            raise BasisMismatch(form.basis_id, cls.basis_id)
        if len(cls) != form.rank:
            raise DimensionMismatch(form.rank, len(cls))
    return form.pair(a.coords, b.coords)


def invariants(form: GramForm) -> Invariants:
    return Invariants(form.rank, form.signature_pos, form.signature_neg, form.parity, form.determinant)


def direct_sum(a: GramForm, b: GramForm) -> GramForm:
    return orthogonal_sum([a, b], basis_id=a.basis_id)


def orthogonal_sum(forms: Sequence[GramForm], basis_id: str = "input") -> GramForm:
    n = sum(f.rank for f in forms)
    rows = [[0] * n for _ in range(n)]
    at = 0
    for f in forms:
        for i, row in enumerate(f.entries):
            rows[at + i][at : at + f.rank] = row
        at += f.rank
    return GramForm(tuple(tuple(r) for r in rows), basis_id)


def negate(form: GramForm) -> GramForm:
    return form.negated()


def _box_rows(rank: int, bound: int, start: int, stop: int) -> np.ndarray:
    base = 2 * bound + 1
    idx = np.arange(start, stop, dtype=np.int64)
    powers = base ** np.arange(rank - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers) % base - bound


def enumerate_vectors(form: GramForm, norm: int, coord_bound: int) -> list[HomologyClass]:
    """Nonzero vectors in the coordinate box [-bound, bound]ⁿ with v·v = norm.

    One representative per ±v pair (first nonzero coordinate positive), sorted.
    """
    if coord_bound < 1:
        raise ValueError("coord_bound must be at least 1")
    n = form.rank
    if n == 0:
        return []
    total = (2 * coord_bound + 1) ** n
    peak = max((abs(x) for row in form.entries for x in row), default=0) * n * n * coord_bound * coord_bound
    found: list[tuple[int, ...]] = []
    if peak < cfg.BOX_INT64_LIMIT and total < cfg.BOX_INT64_LIMIT:
        gram = np.array(form.entries, dtype=np.int64)
        for start in range(0, total, cfg.BOX_CHUNK):
            rows = _box_rows(n, coord_bound, start, min(total, start + cfg.BOX_CHUNK))
            norms = np.einsum("ij,jk,ik->i", rows, gram, rows)
            hits = rows[norms == norm]
            if not len(hits):
                continue
            nonzero = hits != 0
            lead = nonzero.argmax(axis=1)
            keep = nonzero.any(axis=1) & (hits[np.arange(len(hits)), lead] > 0)
            found.extend(tuple(int(x) for x in row) for row in hits[keep])
    else:
        logger.debug("box of %d points past int64 range, using exact arithmetic", total)
        for vec in itertools.product(range(-coord_bound, coord_bound + 1), repeat=n):
            if any(vec) and next(x for x in vec if x) > 0 and form.pair(vec, vec) == norm:
                found.append(vec)
    found.sort()
    out = [HomologyClass(v, form.basis_id) for v in found]
    bad = next((c.coords for c in out if form.pair(c.coords, c.coords) != norm), None)
    if bad is not None:
        raise LatticeError(f"enumerated vector {bad} does not have norm {norm}")
    return out


def search_vectors(
    form: GramForm, accept: Callable[[tuple[int, ...], int], bool], radii: Sequence[int] | None = None
) -> tuple[list[tuple[int, ...]], int]:
    """Escalating ellipsoid search for vectors passing accept(vector, norm).

    The form is first brought to a basis with a reduced positive majorant M;
    each round walks every y with yᵀMy ≤ R. Since |v·v| ≤ yᵀMy the round at
    radius R sees every vector of |norm| ≤ R that has majorant length ≤ R; for
    definite forms M = ±G and the round is complete. Accepted vectors are
    returned sign-normalized and lexicographically smallest first, together
    with the last radius tried.
    An empty list means the ceiling was reached.
    """
    n = form.rank
    if radii is None:
        radii = escalation_schedule()
    if n == 0:
        return [], 0
    t, g, m = exact.reduce_form(form.matrix)
    radius = 0
    for radius in radii:
        estimate = exact.ball_population(n, radius)
        if estimate > cfg.BALL_POINT_CAP:
            logger.debug("radius %d would walk ~%.0f points, stopping", radius, estimate)
            break
        hits = set()
        for y in exact.ball_points(m, radius):
            yv = exact.int_vector(y)
            norm = int(yv.dot(g).dot(yv))
            x = exact.sign_normalize(t.dot(yv))
            if accept(x, norm):
                hits.add(x)
        logger.debug("radius %d: %d accepted vectors in rank %d", radius, len(hits), n)
        if hits:
            return sorted(hits), radius
    return [], radius


def escalation_schedule() -> list[int]:
    radii = []
    r = cfg.ENUM_START_BOUND
    while r <= cfg.ENUM_CEILING:
        radii.append(r)
        r *= 2
    return radii


class CongruenceStatus(str, enum.Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    INCONGRUENT = "incongruent"


class CongruenceResult(NamedTuple):
    status: CongruenceStatus
    change: BasisChange | None = None


def congruent_brute(a: GramForm, b: GramForm, coord_bound: int) -> CongruenceResult:
    """Backtracking search for U with UᵀAU = B, entries bounded by coord_bound.

    NOT_FOUND is inconclusive; INCONGRUENT is returned only when invariants
    already tell the forms apart.
    """
    if invariants(a) != invariants(b):
        return CongruenceResult(CongruenceStatus.INCONGRUENT)
    n = a.rank
    if n == 0:
        return CongruenceResult(CongruenceStatus.FOUND, BasisChange.identity(0, a.basis_id, b.basis_id))
    pools = {}
    for i in range(n):
        target = b.entries[i][i]
        if target not in pools:
            half = [c.coords for c in enumerate_vectors(a, target, coord_bound)]
            pools[target] = half + [tuple(-x for x in v) for v in half]
    cols: list[tuple[int, ...]] = []

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in pools[b.entries[i][i]]:
            if all(a.pair(cols[j], cand) == b.entries[j][i] for j in range(i)):
                cols.append(cand)
                if extend(i + 1):
                    return True
                cols.pop()
        return False

    if not extend(0):
        return CongruenceResult(CongruenceStatus.NOT_FOUND)
    mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    change = BasisChange(mat, a.basis_id, b.basis_id)
    change.verify(a, b)
    return CongruenceResult(CongruenceStatus.FOUND, change)
