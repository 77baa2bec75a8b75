"""Explicit homology classes and sublattices backing the covering constructions.

Every witness is assembled in the canonical basis of a Classification,
pulled back to the input basis and re-verified there by exact evaluation.
"""

from __future__ import annotations

import logging
from typing import Sequence

from algorithms.lattice import evaluate
from core.errors import NotFeasible, ParityMismatch, RankInsufficient, WitnessError, WitnessVerificationError
from data.lattices import A8, G, H
from model.lattice import (
    Classification,
    ClassificationKind,
    GramForm,
    HomologyClass,
    PairWitness,
    SublatticeEmbedding,
)

logger = logging.getLogger(__name__)

# (parity, n, d) -> coefficients of φ₁, φ₂ on (δ₁, δ₂) with δ₁² = 1, δ₂² = -1,
# or on a hyperbolic pair (η₁, η₂)
BUNDLE_TABLE: dict[tuple[str, int, int], tuple[tuple[int, int], tuple[int, int]]] = {
    ("odd", 0, 4): ((1, 1), (2, -2)),
    ("odd", 0, 6): ((1, 1), (3, -3)),
    ("odd", 1, 4): ((2, 0), (2, -2)),
    ("odd", 1, 5): ((3, 2), (1, -1)),
    ("even", 0, 4): ((1, 0), (0, 4)),
    ("even", 0, 5): ((1, 0), (0, 5)),
    ("even", 1, 4): ((1, 2), (0, 4)),
    ("even", 1, 6): ((1, 3), (0, 6)),
}

# coefficient rows over g1..g8
E8_COMBINATIONS: dict[int, tuple[tuple[int, ...], ...]] = {
    2: tuple(tuple(1 if j == i else 0 for j in range(8)) for i in range(8)),
    4: tuple(
        tuple((1 if j == 2 * i else s if j == 2 * i + 1 else 0) for j in range(8))
        for i in range(4)
        for s in (1, -1)
    ),
    6: tuple(
        tuple(c.get(j - off, 0) for j in range(8))
        for off in (0, 4)
        for c in (
            {0: 1, 1: 1, 2: -1},
            {0: 1, 1: -1, 3: 1},
            {0: 1, 2: 1, 3: -1},
            {1: 1, 2: 1, 3: 1},
        )
    ),
}


def embedded_bundle_degree(parity: str, n: int) -> int:
    return {("odd", 0): 6, ("odd", 1): 5, ("even", 0): 5, ("even", 1): 6}[(parity, n)]


def e8_constants() -> tuple[GramForm, tuple[tuple[int, ...], ...]]:
    return GramForm(A8, "e8"), G


def _g_combination(coeffs: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(G[r][c] * coeffs[c] for c in range(8)) for r in range(8))


def e8_sublattice(k: int) -> SublatticeEmbedding:
    """Eight mutually orthogonal vectors of norm k inside E8, k ∈ {2, 4, 6}."""
    if k not in E8_COMBINATIONS:
        raise WitnessError(f"E8 carries the orthogonal frames k = 2, 4, 6 only, not {k}")
    ambient, _ = e8_constants()
    gens = tuple(HomologyClass(_g_combination(row), ambient.basis_id) for row in E8_COMBINATIONS[k])
    target = tuple(tuple(k if i == j else 0 for j in range(8)) for i in range(8))
    return SublatticeEmbedding(ambient, gens, target).verify()


def h_sublattice(k: int) -> SublatticeEmbedding:
    """u = e + (k/2)f and v = e - (k/2)f inside H, with Gram diag(k, -k)."""
    if k < 4 or k % 2:
        raise WitnessError(f"H carries <k> + <-k> only for even k >= 4, not {k}")
    ambient = GramForm(H, "h")
    gens = (HomologyClass((1, k // 2), "h"), HomologyClass((1, -k // 2), "h"))
    return SublatticeEmbedding(ambient, gens, ((k, 0), (0, -k))).verify()


def is_characteristic(form: GramForm, phi: HomologyClass) -> bool:
    """φ·x ≡ x·x (mod 2) for every basis vector x."""
    for i in range(form.rank):
        e = HomologyClass(tuple(1 if j == i else 0 for j in range(form.rank)), form.basis_id)
        if (evaluate(form, phi, e) - form.entries[i][i]) % 2:
            return False
    return True


def _require_recognized(classification: Classification) -> None:
    if not classification.recognized:
        raise NotFeasible("form was not recognized; no witness can be built")


def _diagonal_indices(classification: Classification) -> tuple[list[int], list[int]]:
    diag = classification.layout.diagonal
    return [i for i, s in enumerate(diag) if s > 0], [i for i, s in enumerate(diag) if s < 0]


def _is_diagonal(classification: Classification) -> bool:
    return classification.kind in (ClassificationKind.ODD_DIAGONAL, ClassificationKind.DEFINITE_DIAGONAL)


def _canonical(classification: Classification, terms: dict[int, int]) -> HomologyClass:
    coords = [0] * classification.form.rank
    for i, c in terms.items():
        coords[i] += c
    return classification.canonical_class(coords)


def _check_norm(form: GramForm, phi: HomologyClass, d: int) -> None:
    if evaluate(form, phi, phi) != d:
        raise WitnessVerificationError(f"witness class has norm {evaluate(form, phi, phi)}, expected {d}")


def cp2_witness(classification: Classification, embedded: bool) -> tuple[HomologyClass, int]:
    """Class φ of norm d whose surface covers a projective line d-fold.

    Odd forms: 2δ₁ (d = 4); embedded 3δ₁ (d = 9) when b₂ = 1, otherwise
    (2 - δ₂·δ₂)δ₁ + 2δ₂ (d = 5). Even forms: η₁ + 2η₂ (d = 4); embedded
    η₁ + 3η₂ (d = 6). The class is returned in the input basis.
    """
    _require_recognized(classification)
    form = classification.form
    if form.signature_pos == 0:
        raise NotFeasible("b2+ = 0: no class of positive square")
    if _is_diagonal(classification):
        pos, _ = _diagonal_indices(classification)
        d1 = pos[0]
        if not embedded:
            terms, d = {d1: 2}, 4
        elif form.rank == 1:
            terms, d = {d1: 3}, 9
        else:
            d2 = next(i for i in range(form.rank) if i != d1)
            beta = classification.layout.diagonal[d2]
            terms, d = {d1: 2 - beta, d2: 2}, 5
    else:
        e, f = classification.layout.h_block(0)
        terms, d = ({e: 1, f: 3}, 6) if embedded else ({e: 1, f: 2}, 4)
    phi = classification.pull_back(_canonical(classification, terms))
    _check_norm(form, phi, d)
    return phi, d


def characteristic_cp2_witness(classification: Classification) -> tuple[HomologyClass, int]:
    """Characteristic class φ′ of odd norm d ≥ 5 for a covering pulling w₂ back to w₂.

    φ′ = c·δ₁ + Σ ±1-coefficient terms on the other diagonal generators; its
    norm c² + (b₂⁺ - 1) - b₂⁻ is odd exactly when the signature is odd.
    """
    _require_recognized(classification)
    form = classification.form
    if not _is_diagonal(classification) or form.is_even:
        raise ParityMismatch("a characteristic witness of odd degree needs an odd form")
    if form.signature % 2 == 0:
        raise ParityMismatch(f"signature {form.signature} is even, so every characteristic class has even norm")
    if form.signature_pos == 0:
        raise NotFeasible("b2+ = 0: no class of positive square")
    pos, neg = _diagonal_indices(classification)
    rest = form.signature_pos - 1 - form.signature_neg
    c = 1
    while c * c + rest < 5:
        c += 2
    terms = {i: 1 for i in pos[1:] + neg}
    terms[pos[0]] = c
    d = c * c + rest
    phi = classification.pull_back(_canonical(classification, terms))
    _check_norm(form, phi, d)
    if not is_characteristic(form, phi):
        raise WitnessVerificationError("constructed class is not characteristic")
    return phi, d


def _pair_basis(classification: Classification, index: int = 0) -> tuple[int, int]:
    """Canonical positions of (δ₁, δ₂) or (η₁, η₂) for the index-th disjoint pair."""
    if _is_diagonal(classification):
        pos, neg = _diagonal_indices(classification)
        if index >= min(len(pos), len(neg)):
            raise RankInsufficient(f"need {index + 1} pairs of opposite unit classes")
        return pos[index], neg[index]
    if index >= classification.layout.h:
        raise RankInsufficient(f"need {index + 1} hyperbolic summands")
    return classification.layout.h_block(index)


def _pair_witness(classification: Classification, index: int, twisted: bool, embedded: bool) -> PairWitness:
    form = classification.form
    parity = form.parity
    n = 1 if twisted else 0
    d = embedded_bundle_degree(parity, n) if embedded else 4
    (a1, a2), (b1, b2) = BUNDLE_TABLE[(parity, n, d)]
    x, y = _pair_basis(classification, index)
    c1 = _canonical(classification, {x: a1, y: a2})
    c2 = _canonical(classification, {x: b1, y: b2})
    witness = PairWitness(classification.pull_back(c1), classification.pull_back(c2), n, d, (c1, c2))
    return witness.verify(form)


def bundle_witness(classification: Classification, twisted: bool, embedded: bool) -> PairWitness:
    """Classes φ₁, φ₂ for a covering of S²×S² (n = 0) or the twisted bundle (n = 1)."""
    _require_recognized(classification)
    form = classification.form
    if form.is_definite:
        raise NotFeasible("definite form has no class of square zero")
    return _pair_witness(classification, 0, twisted, embedded)


def pair_family(classification: Classification, count: int, twisted: bool, embedded: bool) -> list[PairWitness]:
    """count mutually orthogonal pair witnesses on disjoint summands."""
    _require_recognized(classification)
    form = classification.form
    if form.signature_pos < count or form.signature_neg < count:
        raise RankInsufficient(f"need b2+ >= {count} and b2- >= {count}")
    family = [_pair_witness(classification, i, twisted, embedded) for i in range(count)]
    for i, u in enumerate(family):
        for v in family[i + 1 :]:
            for p in (u.phi1, u.phi2):
                for q in (v.phi1, v.phi2):
                    if evaluate(form, p, q):
                        raise WitnessVerificationError("pair witnesses are not mutually orthogonal")
    return family


def _lambda_diagonal(classification: Classification, m: int, n: int, k: int) -> list[dict[int, int]]:
    form = classification.form
    pos, neg = _diagonal_indices(classification)
    chosen = pos[:m] + neg[:n]
    if k in (4, 9):
        factor = 2 if k == 4 else 3
        return [{i: factor} for i in chosen]
    if form.rank < 2 * (m + n):
        raise RankInsufficient(f"<5> generators need b2 >= {2 * (m + n)}, have {form.rank}")
    partners = pos[m:] + neg[n:]
    diag = classification.layout.diagonal
    return [{i: 2 - diag[i] * diag[p], p: 2} for i, p in zip(chosen, partners)]


def _lambda_even(classification: Classification, m: int, n: int, k: int) -> list[dict[int, int]]:
    layout = classification.layout
    frame = [g.coords for g in e8_sublattice(k).generators]
    e8_terms = []
    if layout.e8_verified:
        for b in range(abs(layout.e8)):
            block = layout.e8_block(b)
            e8_terms.extend({block[j]: vec[j] for j in range(8) if vec[j]} for vec in frame)
    u_terms, v_terms = [], []
    for b in range(layout.h):
        e, f = layout.h_block(b)
        u_terms.append({e: 1, f: k // 2})
        v_terms.append({e: 1, f: -(k // 2)})
    positives = (e8_terms if layout.e8 > 0 else []) + u_terms
    negatives = (e8_terms if layout.e8 < 0 else []) + v_terms
    if len(positives) < m or len(negatives) < n:
        raise RankInsufficient(
            f"only {len(positives)} positive and {len(negatives)} negative <{k}> generators available"
        )
    return positives[:m] + negatives[:n]


def lambda_sublattice(classification: Classification, m: int, n: int, k: int) -> SublatticeEmbedding:
    """Orthogonal family of m classes of norm k and n of norm -k in the input basis."""
    _require_recognized(classification)
    form = classification.form
    if m < 0 or n < 0:
        raise WitnessError("counts must be non-negative")
    if form.signature_pos < m or form.signature_neg < n:
        raise RankInsufficient(
            f"b2+ = {form.signature_pos}, b2- = {form.signature_neg} cannot hold {m} + {n} generators"
        )
    if _is_diagonal(classification):
        if k not in (4, 5, 9):
            raise ParityMismatch(f"odd forms carry <4>, <5>, <9> families, not <{k}>")
        terms = _lambda_diagonal(classification, m, n, k)
    else:
        if k not in (4, 6):
            raise ParityMismatch(f"even forms carry <4>, <6> families, not <{k}>")
        terms = _lambda_even(classification, m, n, k)
    canonical = tuple(_canonical(classification, t) for t in terms)
    gens = tuple(classification.pull_back(c) for c in canonical)
    signs = [k] * m + [-k] * n
    target = tuple(tuple(signs[i] if i == j else 0 for j in range(m + n)) for i in range(m + n))
    logger.debug("Lambda_{%d,%d}(%d) built from %d canonical generators", m, n, k, len(canonical))
    return SublatticeEmbedding(form, gens, target, canonical).verify()
