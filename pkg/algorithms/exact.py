"""Exact integer and rational kernels for symmetric bilinear forms.

Integer matrices are numpy arrays of dtype=object holding Python ints, so no
product ever overflows. Rational work uses fractions.Fraction.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from core import config as cfg
from core.errors import NotUnimodular

logger = logging.getLogger(__name__)


def int_matrix(rows: Sequence[Sequence[int]] | np.ndarray) -> np.ndarray:
    """Copy rows into a 2-D object array of Python ints."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        return np.zeros((0, 0), dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    out = np.empty(arr.shape, dtype=object)
    for idx, value in np.ndenumerate(arr):
        out[idx] = int(value)
    return out


def int_vector(values: Sequence[int] | np.ndarray) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, value in enumerate(values):
        out[i] = int(value)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def congruence(gram: np.ndarray, change: np.ndarray) -> np.ndarray:
    """changeᵀ · gram · change."""
    return change.T.dot(gram).dot(change)


def as_tuples(mat: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in mat)


def determinant(mat: np.ndarray) -> int:
    if mat.shape[0] == 0:
        return 1
    return int(sympy.Matrix(mat.tolist()).det(method="bareiss"))


def unimodular_inverse(mat: np.ndarray) -> np.ndarray:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = mat.shape[0]
    if n == 0:
        return identity(0)
    m = sympy.Matrix(mat.tolist())
    det = int(m.det(method="bareiss"))
    if abs(det) != 1:
        raise NotUnimodular(det)
    # inverse = adj / det and det is its own reciprocal here
    adj = m.adjugate(method="bareiss")
    return int_matrix([[int(adj[i, j]) * det for j in range(n)] for i in range(n)])


def lagrange_terms(mat: np.ndarray) -> list[tuple[Fraction, list[Fraction]]]:
    """Write a symmetric matrix as a sum of c·l·lᵀ over the rationals.

    A nonzero diagonal pivot contributes one term; when every remaining
    diagonal entry vanishes a nonzero off-diagonal entry a at (i, j) contributes
    the pair (1/2a, rᵢ + rⱼ), (-1/2a, rᵢ - rⱼ). The number of terms is the rank.
    """
    n = mat.shape[0]
    a = [[Fraction(int(mat[i, j])) for j in range(n)] for i in range(n)]
    terms: list[tuple[Fraction, list[Fraction]]] = []
    while True:
        pivot = next((i for i in range(n) if a[i][i] != 0), None)
        if pivot is not None:
            p = a[pivot][pivot]
            row = [x / p for x in a[pivot]]
            terms.append((p, row))
            for r in range(n):
                if a[r][pivot] == 0:
                    continue
                f = a[r][pivot]
                for s in range(n):
                    a[r][s] -= f * row[s]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            return terms
        i, j = pair
        off = a[i][j]
        ri, rj = a[i][:], a[j][:]
        terms.append((1 / (2 * off), [x + y for x, y in zip(ri, rj)]))
        terms.append((-1 / (2 * off), [x - y for x, y in zip(ri, rj)]))
        for r in range(n):
            for s in range(n):
                a[r][s] -= (ri[r] * rj[s] + rj[r] * ri[s]) / off


def signature(mat: np.ndarray) -> tuple[int, int, int]:
    """(positive, negative, nullity) inertia counts."""
    terms = lagrange_terms(mat)
    pos = sum(1 for c, _ in terms if c > 0)
    neg = len(terms) - pos
    return pos, neg, mat.shape[0] - len(terms)


def majorant(mat: np.ndarray) -> np.ndarray:
    """Positive definite rational matrix M with |xᵀGx| ≤ xᵀMx.

    For a nondegenerate G this is Cᵀ|D|C from the Lagrange decomposition and
    det M = |det G|; for a definite G it equals ±G.
    """
    n = mat.shape[0]
    out = np.empty((n, n), dtype=object)
    out.fill(Fraction(0))
    for c, l in lagrange_terms(mat):
        w = abs(c)
        for i in range(n):
            if l[i] == 0:
                continue
            for j in range(n):
                out[i, j] += w * l[i] * l[j]
    return out


def gram_schmidt(gram: np.ndarray) -> tuple[list[list[Fraction]], list[Fraction]]:
    """GSO coefficients mu and squared lengths from a positive definite Gram."""
    n = gram.shape[0]
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            acc = Fraction(gram[i, j])
            for k in range(j):
                acc -= mu[j][k] * mu[i][k] * b[k]
            mu[i][j] = acc / b[j]
        acc = Fraction(gram[i, i])
        for k in range(i):
            acc -= mu[i][k] * mu[i][k] * b[k]
        b[i] = acc
    return mu, b


def lll_reduce(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """LLL on a positive definite rational Gram matrix.

    Returns (T, Tᵀ·gram·T) with T unimodular; columns of T are the reduced basis.
    """
    n = gram.shape[0]
    delta = Fraction(*cfg.LLL_DELTA)
    g = gram.copy()
    t = identity(n)
    if n < 2:
        return t, g
    mu, b = gram_schmidt(g)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = math.floor(mu[k][j] + Fraction(1, 2))
            if q:
                t[:, k] -= q * t[:, j]
                g[k, :] -= q * g[j, :]
                g[:, k] -= q * g[:, j]
                mu, b = gram_schmidt(g)
        if b[k] >= (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            k += 1
            continue
        order = list(range(n))
        order[k - 1], order[k] = k, k - 1
        t = t[:, order]
        g = g[np.ix_(order, order)]
        mu, b = gram_schmidt(g)
        k = max(k - 1, 1)
    return t, g


def reduce_form(gram: np.ndarray, rounds: int = 6) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Find a basis in which the form has a well conditioned majorant.

    Alternates majorant construction and LLL until the basis stops moving.
    Returns (T, TᵀGT, reduced majorant of TᵀGT).
    """
    n = gram.shape[0]
    t = identity(n)
    g = gram
    m_red = majorant(g)
    for _ in range(rounds):
        step, m_red = lll_reduce(m_red)
        t = t.dot(step)
        g = congruence(g, step)
        if np.array_equal(step, identity(n)):
            break
        m_red = majorant(g)
    # m_red is a majorant of g in the current coordinates either way
    return t, g, m_red


def ball_points(gram: np.ndarray, radius: int) -> Iterator[tuple[int, ...]]:
    """All nonzero integer y with yᵀ·gram·y ≤ radius, gram positive definite.

    Depth-first walk over the GSO coordinates, last coordinate outermost; only
    the half with first nonzero coordinate positive is yielded.
    """
    n = gram.shape[0]
    if n == 0:
        return
    mu, b = gram_schmidt(gram)
    y = [0] * n

    def walk(j: int, budget: Fraction) -> Iterator[tuple[int, ...]]:
        center = -sum((mu[i][j] * y[i] for i in range(j + 1, n)), Fraction(0))
        span = budget / b[j]
        width = math.isqrt(span.numerator // span.denominator) + 1
        base = math.floor(center)
        for v in range(base - width, base + width + 2):
            off = v - center
            rest = budget - b[j] * off * off
            if rest < 0:
                continue
            y[j] = v
            if j == 0:
                yield tuple(y)
            else:
                yield from walk(j - 1, rest)
        y[j] = 0

    for point in walk(n - 1, Fraction(radius)):
        lead = next((x for x in point if x), 0)
        if lead > 0:
            yield point


def ball_population(rank: int, radius: int) -> float:
    """Volume estimate of the radius ball of a determinant-1 positive form."""
    if rank == 0:
        return 1.0
    log_vol = (rank / 2) * math.log(math.pi * radius) - math.lgamma(rank / 2 + 1)
    return math.exp(log_vol)


def sign_normalize(vec: Sequence[int]) -> tuple[int, ...]:
    lead = next((x for x in vec if x), 0)
    return tuple(-int(x) for x in vec) if lead < 0 else tuple(int(x) for x in vec)


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of values and coefficients x with Σ xᵢ·valuesᵢ = gcd."""
    g = 0
    coeffs = [0] * len(values)
    for i, v in enumerate(values):
        s, t, g_new = (int(z) for z in ZZ.gcdex(ZZ(g), ZZ(int(v))))
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
        g = g_new
    return g, coeffs


def column_basis(gens: np.ndarray) -> np.ndarray:
    """Basis of the integer column span of gens: the columns of its Hermite normal form."""
    rows, cols = gens.shape
    if not any(x != 0 for x in gens.flat):
        return np.zeros((rows, 0), dtype=object)
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in gens.tolist()], (rows, cols), ZZ)
    return int_matrix(hermite_normal_form(dm).to_Matrix().tolist())


def split_off(gram: np.ndarray, sub: np.ndarray) -> np.ndarray:
    """Unimodular Q = [sub | C] with QᵀGQ block diagonal.

    sub holds k columns spanning a sublattice whose own Gram is unimodular;
    C is a basis of its orthogonal complement.
    """
    n, k = sub.shape
    inner = congruence(gram, sub)
    inner_inv = unimodular_inverse(inner)
    projector = identity(n) - sub.dot(inner_inv).dot(sub.T).dot(gram)
    comp = column_basis(projector)
    if comp.shape[1] != n - k:
        raise NotUnimodular(0)
    q = np.concatenate([sub, comp], axis=1) if k < n else sub.copy()
    if abs(determinant(q)) != 1:
        raise NotUnimodular(determinant(q))
    return q
