"""Monodromy of simple branched coverings of S².

Sheets are 1-based in BranchData and 0-based inside sympy permutations.
"""

from __future__ import annotations

import logging

from sympy.combinatorics import Permutation, PermutationGroup

from core.errors import BranchDataError, OddBranchCount
from model.covering import BranchData, BranchVerification, DiskBundleLabel

logger = logging.getLogger(__name__)


def _transposition(pair: tuple[int, int], degree: int) -> Permutation:
    i, j = pair
    return Permutation([[i - 1, j - 1]], size=degree)


def _cycles(perm: Permutation) -> str:
    cycles = [c for c in perm.cyclic_form if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


def verify(data: BranchData) -> BranchVerification:
    d = data.degree
    perms = [_transposition(p, d) for p in data.points]
    product = Permutation(list(range(d)))
    closed = 0
    for k, perm in enumerate(perms, start=1):
        product = product * perm
        if product.is_Identity:
            closed = k
    if perms:
        orbit = tuple(sorted(x + 1 for x in PermutationGroup(perms).orbit(0)))
    else:
        orbit = (1,)
    touched = {s for p in data.points for s in p}
    result = BranchVerification(
        product_identity=product.is_Identity,
        transitive=len(orbit) == d,
        product=_cycles(product),
        closed_prefix=closed,
        orbit=orbit,
        untouched=tuple(s for s in range(1, d + 1) if s not in touched),
    )
    logger.debug("verified %d points in S_%d: %s", len(data), d, result.violation or "ok")
    return result


def total_genus(data: BranchData) -> int:
    """Genus of the covering surface: χ = 2d - B, so g = 1 - d + B/2."""
    count = len(data)
    if count % 2:
        raise OddBranchCount(count)
    check = verify(data)
    if not check.ok:
        raise BranchDataError(check.violation)
    return 1 - data.degree + count // 2


def stabilize(data: BranchData, d_new: int) -> BranchData:
    """Raise the degree to d_new by appending (j j+1) twice for j = d, …, d_new - 1."""
    if d_new <= data.degree:
        raise BranchDataError(f"stabilization must raise the degree above {data.degree}, got {d_new}")
    extra = tuple((j, j + 1) for j in range(data.degree, d_new) for _ in range(2))
    return BranchData(d_new, data.points + extra)


def stabilized_two_fold(g: int, d: int) -> BranchData:
    """d-fold stabilization of the hyperelliptic 2-fold covering of a genus-g surface."""
    if g < 0 or d < 2:
        raise BranchDataError(f"need genus >= 0 and degree >= 2, got g={g}, d={d}")
    base = BranchData.repeated(2, [(1, 2)], 2 * g + 2)
    return base if d == 2 else stabilize(base, d)


def euler_pullback(d: int, e: int) -> int:
    """Euler number of the pullback of a disk bundle of Euler number e under a d-fold covering."""
    if d < 1:
        raise BranchDataError(f"covering degree must be positive, got {d}")
    return d * e


def pullback_bundle(bundle: DiskBundleLabel, data: BranchData) -> DiskBundleLabel:
    """Bundle over the covering surface of data, pulled back from bundle over S2."""
    return bundle.pullback(data.degree, total_genus(data))


def branch_disk_count(g: int, d: int) -> int:
    if d < 2:
        raise BranchDataError(f"degree must be at least 2, got {d}")
    return 2 * (g + d - 1)
