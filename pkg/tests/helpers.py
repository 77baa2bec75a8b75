"""Shared builders for the test suite."""

from __future__ import annotations

import numpy as np

from algorithms import exact
from algorithms.lattice import orthogonal_sum
from data.lattices import A8, H
from model.lattice import GramForm

E8 = GramForm(A8)
HYP = GramForm(H)

# rank <= 4 forms checked against brute-force congruence search
ORACLE_LIBRARY = {
    "I1": GramForm.diagonal([1]),
    "-I1": GramForm.diagonal([-1]),
    "diag(1,-1)": GramForm.diagonal([1, -1]),
    "diag(-1,1)": GramForm.diagonal([-1, 1]),
    "[[2,1],[1,1]]": GramForm(((2, 1), (1, 1))),
    "[[1,1],[1,0]]": GramForm(((1, 1), (1, 0))),
    "H": HYP,
    "[[2,1],[1,0]]": GramForm(((2, 1), (1, 0))),
    "I3": GramForm.diagonal([1, 1, 1]),
    "diag(1,1,-1)": GramForm.diagonal([1, 1, -1]),
    "H+H": orthogonal_sum([HYP, HYP]),
    "diag(1,1,-1,-1)": GramForm.diagonal([1, 1, -1, -1]),
}


def random_unimodular(rng: np.random.Generator, n: int, bound: int = 3, steps: int | None = None) -> np.ndarray:
    """Random product of elementary column operations with entries bounded by bound."""
    u = exact.identity(n)
    if n >= 2:
        for _ in range(steps or 3 * n):
            i, j = (int(x) for x in rng.choice(n, 2, replace=False))
            c = int(rng.choice([-1, 1]))
            cand = u.copy()
            cand[:, i] += c * cand[:, j]
            if max(abs(int(x)) for x in cand.flat) <= bound:
                u = cand
        perm = [int(x) for x in rng.permutation(n)]
        u = u[:, perm]
    for i in range(n):
        if rng.random() < 0.5:
            u[:, i] = -u[:, i]
    return u


def conjugate(form: GramForm, u: np.ndarray) -> GramForm:
    return GramForm(exact.as_tuples(exact.congruence(form.matrix, u)), form.basis_id)


def random_diagonal(rng: np.random.Generator, rank: int) -> GramForm:
    return GramForm.diagonal([int(x) for x in rng.choice([1, -1], rank)])
