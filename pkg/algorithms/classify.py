"""Constructive recognition of unimodular forms.

Odd forms are diagonalized by splitting off unit vectors one at a time, even
indefinite forms by splitting off hyperbolic planes and then E8 root frames,
and definite forms are tested against ±identity.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from algorithms import exact
from algorithms.lattice import search_vectors
from core import config as cfg
from core.errors import (
    DefiniteForm,
    DonaldsonObstruction,
    InvariantMismatch,
    NoIsotropicWithinBound,
    NoUnitVectorWithinBound,
    NotDefinite,
    NotEven,
    NotOdd,
    NotPrimitive,
    NotUnimodular,
)
from data.lattices import A8
from model.lattice import (
    BasisChange,
    Classification,
    ClassificationKind,
    GramForm,
    SummandLayout,
)

logger = logging.getLogger(__name__)

CANONICAL = "canonical"

DONALDSON_NOTE = (
    "definite form not congruent to +-identity: it cannot be the intersection "
    "form of a closed oriented PL 4-manifold (Donaldson)"
)


def is_characteristic_vector(gram: np.ndarray, x) -> bool:
    """x·eᵢ ≡ eᵢ·eᵢ (mod 2) for every basis vector eᵢ."""
    gx = gram.dot(exact.int_vector(x))
    return all((gx[i] - gram[i, i]) % 2 == 0 for i in range(gram.shape[0]))


class _Peeler:
    """Running basis while sublattices are split off the front one by one."""

    def __init__(self, gram: np.ndarray):
        self.gram = gram
        self.basis = exact.identity(gram.shape[0])
        self.done = 0
        self.rest = gram.copy()

    @property
    def rest_form(self) -> GramForm:
        return GramForm(exact.as_tuples(self.rest), "complement")

    def split(self, sub: np.ndarray) -> None:
        """sub: columns in the coordinates of the remaining block."""
        k = sub.shape[1]
        q = exact.split_off(self.rest, sub)
        self.basis[:, self.done :] = self.basis[:, self.done :].dot(q)
        self.rest = exact.congruence(self.rest, q)[k:, k:]
        self.done += k

    def canonical(self) -> np.ndarray:
        return exact.congruence(self.gram, self.basis)


def _require_unimodular(form: GramForm) -> None:
    if not form.is_unimodular:
        raise NotUnimodular(form.determinant)


def _finish(form, kind, basis, layout, diagnostics=()) -> Classification:
    change = BasisChange(exact.as_tuples(basis), form.basis_id, CANONICAL)
    canonical = change.transform(form)
    result = Classification(kind, form, change, canonical, layout, tuple(diagnostics))
    result.verify()
    logger.info("classified rank %d form as %s %s", form.rank, kind.value, layout.to_json())
    return result


def _unrecognized(form: GramForm, note: str) -> Classification:
    logger.warning("rank %d form unrecognized: %s", form.rank, note)
    return _finish(form, ClassificationKind.UNRECOGNIZED, exact.identity(form.rank), SummandLayout(), [note])


def _peel_units(form: GramForm, complete: bool) -> tuple[np.ndarray, list[int]] | None:
    """Split off unit vectors until the form is diagonal.

    Each step takes a unit vector of the majority sign; while three or more
    dimensions remain it must be non-characteristic so the complement stays
    odd. With complete=True (definite forms) a single radius-1 round decides
    existence and None is returned when no unit vector exists.
    """
    peeler = _Peeler(form.matrix)
    signs: list[int] = []
    while peeler.rest.shape[0] > 1:
        rest = peeler.rest_form
        sign = 1 if rest.signature_pos >= rest.signature_neg else -1
        strict = rest.rank >= 3 and not rest.is_definite

        def accept(x, norm, _gram=peeler.rest, _sign=sign, _strict=strict):
            return norm == _sign and not (_strict and is_characteristic_vector(_gram, x))

        hits, radius = search_vectors(rest, accept, [1] if complete else None)
        if not hits:
            if complete:
                return None
            raise NoUnitVectorWithinBound(f"no usable unit vector in a rank {rest.rank} complement", cfg.ENUM_CEILING)
        logger.debug("split unit vector %s of norm %d at radius %d", hits[0], sign, radius)
        peeler.split(exact.int_matrix([hits[0]]).T)
        signs.append(sign)
    if peeler.rest.shape[0] == 1:
        signs.append(int(peeler.rest[0, 0]))
    order = sorted(range(len(signs)), key=lambda i: (-signs[i], i))
    return peeler.basis[:, order], [signs[i] for i in order]


def diagonalize_odd(form: GramForm) -> Classification:
    """Congruence to diag(+1 × b₂⁺, -1 × b₂⁻) for an odd unimodular form."""
    _require_unimodular(form)
    if form.is_even:
        raise NotOdd(f"rank {form.rank} form is even")
    peeled = _peel_units(form, complete=form.is_definite)
    if peeled is None:
        raise DonaldsonObstruction(DONALDSON_NOTE)
    basis, signs = peeled
    return _finish(form, ClassificationKind.ODD_DIAGONAL, basis, SummandLayout(diagonal=tuple(signs)))


def check_definite_diagonal(form: GramForm) -> Classification:
    """DefiniteDiagonal when the form is ±identity, Unrecognized otherwise."""
    _require_unimodular(form)
    if not form.is_definite:
        raise NotDefinite(f"signature ({form.signature_pos},{form.signature_neg}) is indefinite")
    if form.rank == 0:
        return _finish(form, ClassificationKind.DEFINITE_DIAGONAL, exact.identity(0), SummandLayout())
    if form.is_even:
        return _unrecognized(form, "even " + DONALDSON_NOTE)
    peeled = _peel_units(form, complete=True)
    if peeled is None:
        return _unrecognized(form, "odd " + DONALDSON_NOTE)
    basis, signs = peeled
    return _finish(form, ClassificationKind.DEFINITE_DIAGONAL, basis, SummandLayout(diagonal=tuple(signs)))


def _hyperbolic_pair(rest: GramForm) -> np.ndarray:
    """Columns e, f with e·e = f·f = 0 and e·f = 1."""

    def accept(x, norm):
        return norm == 0 and math.gcd(*x) == 1

    hits, radius = search_vectors(rest, accept)
    if not hits:
        raise NoIsotropicWithinBound(f"no primitive isotropic vector in rank {rest.rank}", cfg.ENUM_CEILING)
    gram = rest.matrix
    e = exact.int_vector(hits[0])
    g, f0 = exact.bezout(list(gram.dot(e)))
    if g != 1:
        raise NotPrimitive(f"pairing of {tuple(e)} with the lattice has content {g}")
    f0 = exact.int_vector(f0)
    half = int(f0.dot(gram).dot(f0)) // 2
    f = f0 - half * e
    logger.debug("hyperbolic pair e=%s f=%s at radius %d", tuple(e), tuple(f), radius)
    return np.stack([e, f], axis=1)


def split_hyperbolic(form: GramForm) -> tuple[BasisChange, GramForm]:
    """Basis whose first two vectors form a hyperbolic pair, plus the complement form."""
    _require_unimodular(form)
    if not form.is_even:
        raise NotEven(f"rank {form.rank} form is odd")
    if form.is_definite:
        raise DefiniteForm("a definite form has no isotropic vectors")
    sub = _hyperbolic_pair(form)
    q = exact.split_off(form.matrix, sub)
    change = BasisChange(exact.as_tuples(q), form.basis_id, "split")
    remaining = exact.congruence(form.matrix, q)[2:, 2:]
    return change, GramForm(exact.as_tuples(remaining), "complement")


def match_e8(form: GramForm) -> np.ndarray | None:
    """Eight roots of a positive definite even form with Gram matrix exactly A₈.

    Backtracks over the norm-2 vectors with the first root fixed; returns the
    roots as columns, or None when no frame exists within the node budget.
    """
    half, _ = search_vectors(form, lambda x, norm: norm == 2, [2])
    if len(half) < 8:
        return None
    roots = half + [tuple(-v for v in r) for r in half]
    rows = exact.int_matrix(roots)
    pairing = rows.dot(form.matrix).dot(rows.T).astype(np.int64)
    target = np.array(A8, dtype=np.int64)
    chosen = [0]
    budget = [cfg.E8_SEARCH_BUDGET]

    def extend() -> bool:
        i = len(chosen)
        if i == 8:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        mask = np.all(pairing[chosen, :] == target[:i, i][:, None], axis=0)
        for c in np.flatnonzero(mask):
            chosen.append(int(c))
            if extend():
                return True
            chosen.pop()
        return False

    if not extend():
        return None
    return rows[chosen].T


def recognize_even_indefinite(form: GramForm) -> Classification:
    """Decompose an even indefinite form as b·H ⊕ |a|·(±E8)."""
    _require_unimodular(form)
    if not form.is_even:
        raise NotEven(f"rank {form.rank} form is odd")
    if form.is_definite:
        raise DefiniteForm("even definite forms have no hyperbolic summand")
    if form.signature % 8:
        raise InvariantMismatch(f"signature {form.signature} of an even unimodular form must be divisible by 8")
    a = form.signature // 8
    b = form.rank // 2 - 4 * abs(a)
    peeler = _Peeler(form.matrix)
    for _ in range(b):
        peeler.split(_hyperbolic_pair(peeler.rest_form))
    leftover = peeler.rest_form
    expected = (8 * a, 0) if a > 0 else (0, -8 * a)
    if leftover.rank and ((leftover.signature_pos, leftover.signature_neg) != expected or not leftover.is_even):
        raise InvariantMismatch(f"leftover {leftover} does not match {abs(a)} copies of E8")
    sign = 1 if a > 0 else -1
    verified = True
    for _ in range(abs(a)):
        frame = match_e8(peeler.rest_form if sign > 0 else peeler.rest_form.negated())
        if frame is None:
            verified = False
            break
        peeler.split(frame)
    notes = []
    if not verified:
        notes.append(
            f"definite leftover of rank {peeler.rest.shape[0]} kept at invariant level: "
            "no A8 root frame found"
        )
    layout = SummandLayout(e8=a, h=b, e8_verified=verified)
    return _finish(form, ClassificationKind.EVEN_INDEFINITE, peeler.basis, layout, notes)


def classify(form: GramForm) -> Classification:
    _require_unimodular(form)
    if form.rank == 0 or form.is_definite:
        return check_definite_diagonal(form)
    if form.is_even:
        return recognize_even_indefinite(form)
    return diagonalize_odd(form)
