"""Integral symmetric bilinear forms and the objects built on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from algorithms import exact
from core.errors import (
    BasisMismatch,
    CongruenceVerificationError,
    DegenerateForm,
    DimensionMismatch,
    InvalidForm,
    NotUnimodular,
    WitnessVerificationError,
)

EVEN, ODD = "even", "odd"


def _check_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidForm(path, f"expected an integer, got {type(value).__name__}")
    return int(value)


def _freeze(rows: Sequence[Sequence[Any]], name: str) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(_check_int(x, f"{name}[{i}][{j}]") for j, x in enumerate(row))
        for i, row in enumerate(rows)
    )


@dataclass(frozen=True)
class GramForm:
    """Symmetric nondegenerate integer Gram matrix with cached invariants."""

    entries: tuple[tuple[int, ...], ...]
    basis_id: str = "input"

    def __post_init__(self):
        rows = self.entries.tolist() if isinstance(self.entries, np.ndarray) else self.entries
        frozen = _freeze(rows, "gram")
        n = len(frozen)
        for i, row in enumerate(frozen):
            if len(row) != n:
                raise InvalidForm(f"gram[{i}]", f"row has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if frozen[i][j] != frozen[j][i]:
                    raise InvalidForm(f"gram[{j}][{i}]", f"entry {frozen[j][i]} != gram[{i}][{j}] = {frozen[i][j]}")
        object.__setattr__(self, "entries", frozen)
        if self.determinant == 0:
            raise DegenerateForm()

    @classmethod
    def diagonal(cls, values: Sequence[int], basis_id: str = "input") -> "GramForm":
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)), basis_id)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def matrix(self) -> np.ndarray:
        return exact.int_matrix(self.entries) if self.rank else exact.identity(0)

    @cached_property
    def determinant(self) -> int:
        return exact.determinant(self.matrix)

    @cached_property
    def _inertia(self) -> tuple[int, int, int]:
        return exact.signature(self.matrix)

    @property
    def signature_pos(self) -> int:
        return self._inertia[0]

    @property
    def signature_neg(self) -> int:
        return self._inertia[1]

    @property
    def signature(self) -> int:
        return self.signature_pos - self.signature_neg

    @property
    def parity(self) -> str:
        return EVEN if all(self.entries[i][i] % 2 == 0 for i in range(self.rank)) else ODD

    @property
    def is_even(self) -> bool:
        return self.parity == EVEN

    @property
    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    @property
    def is_definite(self) -> bool:
        return self.signature_pos == 0 or self.signature_neg == 0

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        n = self.rank
        if len(x) != n:
            raise DimensionMismatch(n, len(x))
        if len(y) != n:
            raise DimensionMismatch(n, len(y))
        return int(sum(x[i] * self.entries[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j]))

    def gram_of(self, vectors: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.pair(u, v) for v in vectors) for u in vectors)

    def negated(self) -> "GramForm":
        return GramForm(tuple(tuple(-x for x in row) for row in self.entries), self.basis_id)

    def to_json(self) -> dict:
        return {"gram": [list(row) for row in self.entries]}

    def __str__(self):
        return f"GramForm(rank={self.rank}, sig=({self.signature_pos},{self.signature_neg}), {self.parity}, det={self.determinant})"


@dataclass(frozen=True)
class HomologyClass:
    coords: tuple[int, ...]
    basis_id: str = "input"

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_check_int(x, f"coords[{i}]") for i, x in enumerate(self.coords)))

    def __len__(self):
        return len(self.coords)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-x for x in self.coords), self.basis_id)

    def vector(self) -> np.ndarray:
        return exact.int_vector(self.coords)

    def to_json(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class BasisChange:
    """Unimodular matrix whose columns are the target basis written in the source basis."""

    matrix: tuple[tuple[int, ...], ...]
    source_basis_id: str = "input"
    target_basis_id: str = "canonical"

    def __post_init__(self):
        rows = self.matrix.tolist() if isinstance(self.matrix, np.ndarray) else self.matrix
        object.__setattr__(self, "matrix", _freeze(rows, "change"))
        det = exact.determinant(self.array())
        if abs(det) != 1:
            raise NotUnimodular(det)

    @classmethod
    def identity(cls, rank: int, source: str = "input", target: str = "canonical") -> "BasisChange":
        return cls(exact.as_tuples(exact.identity(rank)), source, target)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def array(self) -> np.ndarray:
        return exact.int_matrix(self.matrix) if self.matrix else exact.identity(0)

    def inverse(self) -> "BasisChange":
        inv = exact.unimodular_inverse(self.array())
        return BasisChange(exact.as_tuples(inv), self.target_basis_id, self.source_basis_id)

    def to_source(self, cls: HomologyClass) -> HomologyClass:
        if cls.basis_id != self.target_basis_id:
            raise BasisMismatch(self.target_basis_id, cls.basis_id)
        if len(cls) != self.rank:
            raise DimensionMismatch(self.rank, len(cls))
        return HomologyClass(tuple(int(x) for x in self.array().dot(cls.vector())), self.source_basis_id)

    def to_target(self, cls: HomologyClass) -> HomologyClass:
        return self.inverse().to_source(cls)

    def transform(self, form: GramForm) -> GramForm:
        if form.basis_id != self.source_basis_id:
            raise BasisMismatch(self.source_basis_id, form.basis_id)
        if form.rank != self.rank:
            raise DimensionMismatch(self.rank, form.rank)
        return GramForm(exact.as_tuples(exact.congruence(form.matrix, self.array())), self.target_basis_id)

    def verify(self, source: GramForm, target: GramForm) -> None:
        image = self.transform(source)
        if image.entries != target.entries:
            raise CongruenceVerificationError(
                f"changeᵀ·A·change does not reproduce the {target.rank}x{target.rank} target"
            )

    def to_json(self) -> dict:
        return {
            "matrix": [list(row) for row in self.matrix],
            "source_basis": self.source_basis_id,
            "target_basis": self.target_basis_id,
        }


class ClassificationKind(str, enum.Enum):
    ODD_DIAGONAL = "OddDiagonal"
    EVEN_INDEFINITE = "EvenIndefinite"
    DEFINITE_DIAGONAL = "DefiniteDiagonal"
    UNRECOGNIZED = "Unrecognized"


@dataclass(frozen=True)
class SummandLayout:
    """Block structure of a canonical form.

    Diagonal kinds list their ±1 entries. The even indefinite kind places b
    hyperbolic planes first and |a| copies of ±A₈ after them.
    """

    diagonal: tuple[int, ...] = ()
    e8: int = 0
    h: int = 0
    e8_verified: bool = True

    def h_block(self, i: int) -> tuple[int, int]:
        return 2 * i, 2 * i + 1

    def e8_block(self, i: int) -> range:
        start = 2 * self.h + 8 * i
        return range(start, start + 8)

    def to_json(self) -> dict:
        if self.diagonal:
            return {"diagonal": list(self.diagonal)}
        return {"a": self.e8, "b": self.h, "e8_verified": self.e8_verified}


@dataclass(frozen=True)
class Classification:
    kind: ClassificationKind
    form: GramForm
    change: BasisChange
    canonical: GramForm
    layout: SummandLayout = field(default_factory=SummandLayout)
    diagnostics: tuple[str, ...] = ()

    @property
    def recognized(self) -> bool:
        return self.kind != ClassificationKind.UNRECOGNIZED

    def verify(self) -> None:
        self.change.verify(self.form, self.canonical)
        if (self.canonical.signature_pos, self.canonical.signature_neg, self.canonical.parity) != (
            self.form.signature_pos,
            self.form.signature_neg,
            self.form.parity,
        ):
            raise CongruenceVerificationError("canonical form invariants differ from the input")

    def canonical_class(self, coords: Sequence[int]) -> HomologyClass:
        return HomologyClass(tuple(coords), self.canonical.basis_id)

    def pull_back(self, cls: HomologyClass) -> HomologyClass:
        """Express a canonical-basis class in the input basis."""
        return self.change.to_source(cls)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "rank": self.form.rank,
            "signature": [self.form.signature_pos, self.form.signature_neg],
            "parity": self.form.parity,
            "layout": self.layout.to_json(),
            "canonical": self.canonical.to_json()["gram"],
            "change": self.change.to_json(),
            "diagnostics": list(self.diagnostics),
        }


@dataclass(frozen=True)
class SublatticeEmbedding:
    ambient: GramForm
    generators: tuple[HomologyClass, ...]
    target_gram: tuple[tuple[int, ...], ...]
    canonical_generators: tuple[HomologyClass, ...] = ()

    def residual(self) -> tuple[tuple[int, ...], ...]:
        for g in self.generators:
            if g.basis_id != self.ambient.basis_id:
                raise BasisMismatch(self.ambient.basis_id, g.basis_id)
        actual = self.ambient.gram_of([g.coords for g in self.generators])
        return tuple(
            tuple(a - t for a, t in zip(row_a, row_t)) for row_a, row_t in zip(actual, self.target_gram)
        )

    def verify(self) -> "SublatticeEmbedding":
        if len(self.target_gram) != len(self.generators) or any(any(r) for r in self.residual()):
            raise WitnessVerificationError("generator Gram matrix differs from the target lattice")
        return self

    def to_json(self) -> dict:
        out = {
            "generators": [g.to_json() for g in self.generators],
            "target_gram": [list(r) for r in self.target_gram],
            "residual": [list(r) for r in self.residual()],
        }
        if self.canonical_generators:
            out["canonical_generators"] = [g.to_json() for g in self.canonical_generators]
        return out


@dataclass(frozen=True)
class PairWitness:
    """Classes φ₁, φ₂ with φ₁·φ₁ = nd, φ₁·φ₂ = d, φ₂·φ₂ = 0."""

    phi1: HomologyClass
    phi2: HomologyClass
    n: int
    d: int
    canonical: tuple[HomologyClass, HomologyClass] | None = None

    def residuals(self, form: GramForm) -> tuple[int, int, int]:
        for cls in (self.phi1, self.phi2):
            if cls.basis_id != form.basis_id:
                raise BasisMismatch(form.basis_id, cls.basis_id)
        p1, p2 = self.phi1.coords, self.phi2.coords
        return (
            form.pair(p1, p1) - self.n * self.d,
            form.pair(p1, p2) - self.d,
            form.pair(p2, p2),
        )

    def verify(self, form: GramForm) -> "PairWitness":
        if any(self.residuals(form)):
            raise WitnessVerificationError(f"pair witness fails its equations: residuals {self.residuals(form)}")
        return self

    def to_json(self, form: GramForm | None = None) -> dict:
        out = {"phi1": self.phi1.to_json(), "phi2": self.phi2.to_json(), "n": self.n, "d": self.d}
        if self.canonical:
            out["canonical"] = [c.to_json() for c in self.canonical]
        if form is not None:
            out["residual"] = list(self.residuals(form))
        return out
