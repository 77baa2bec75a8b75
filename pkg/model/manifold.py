"""Manifold invariants, base manifolds and the reports produced for them."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Any

from core import config as cfg
from core.errors import InvalidBase, InvalidInvariants
from model.covering import BranchData
from model.lattice import GramForm, HomologyClass, PairWitness, SublatticeEmbedding


@dataclass(frozen=True)
class ManifoldInvariants:
    form: GramForm
    b1: int = 0
    free_quotient_rank: int | None = None

    def __post_init__(self):
        if not self.form.is_unimodular:
            raise InvalidInvariants("gram", f"determinant {self.form.determinant} is not +-1")
        if isinstance(self.b1, bool) or not isinstance(self.b1, int) or self.b1 < 0:
            raise InvalidInvariants("b1", f"expected a non-negative integer, got {self.b1!r}")
        fqr = self.free_quotient_rank
        if fqr is not None:
            if isinstance(fqr, bool) or not isinstance(fqr, int) or fqr < 0:
                raise InvalidInvariants("free_quotient_rank", f"expected a non-negative integer, got {fqr!r}")
            if fqr > self.b1:
                raise InvalidInvariants(
                    "free_quotient_rank", f"a free quotient of rank {fqr} forces b1 >= {fqr}, but b1 = {self.b1}"
                )

    @property
    def b2(self) -> int:
        return self.form.rank

    def to_json(self) -> dict:
        out: dict[str, Any] = {"gram": self.form.to_json()["gram"], "b1": self.b1}
        if self.free_quotient_rank is not None:
            out["free_quotient_rank"] = self.free_quotient_rank
        return out


class BaseTag(str, enum.Enum):
    CP2 = "CP2"
    CP2BAR = "CP2bar"
    S2XS2 = "S2xS2"
    S2TWISTEDS2 = "S2twistedS2"
    S3XS1 = "S3xS1"
    SUM_CP2 = "sum"
    SUM_S2XS2 = "s2s2sum"
    SUM_S3XS1 = "s3s1sum"


_ORDER = list(BaseTag)
_SUM_PATTERN = re.compile(r"^(sum|s2s2sum|s3s1sum):(\d+)(?:,(\d+))?$")


@dataclass(frozen=True)
class BaseManifold:
    """Target of a covering; m and n count summands for the connected sums."""

    tag: BaseTag
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise InvalidBase("base", f"summand counts must be non-negative, got ({self.m}, {self.n})")

    @classmethod
    def parse(cls, text: str) -> "BaseManifold":
        for tag in (BaseTag.CP2, BaseTag.CP2BAR, BaseTag.S2XS2, BaseTag.S2TWISTEDS2, BaseTag.S3XS1):
            if text == tag.value:
                return cls(tag)
        match = _SUM_PATTERN.match(text)
        if not match:
            raise InvalidBase("base", f"unknown base {text!r}")
        kind, first, second = match.groups()
        if kind == "sum":
            if second is None:
                raise InvalidBase("base", "sum:M,N needs two counts")
            return cls(BaseTag.SUM_CP2, int(first), int(second))
        if second is not None:
            raise InvalidBase("base", f"{kind}:N takes a single count")
        return cls(BaseTag(kind), 0, int(first))

    def normalize(self) -> "BaseManifold":
        if self.tag == BaseTag.SUM_CP2:
            if self.m + self.n == 0:
                raise InvalidBase("base", "the empty connected sum is not a base")
            if (self.m, self.n) == (1, 0):
                return BaseManifold(BaseTag.CP2)
            if (self.m, self.n) == (0, 1):
                return BaseManifold(BaseTag.CP2BAR)
        elif self.tag in (BaseTag.SUM_S2XS2, BaseTag.SUM_S3XS1):
            if self.n == 0:
                raise InvalidBase("base", "the empty connected sum is not a base")
            if self.n == 1:
                return BaseManifold(BaseTag.S2XS2 if self.tag == BaseTag.SUM_S2XS2 else BaseTag.S3XS1)
        return self

    @property
    def label(self) -> str:
        if self.tag == BaseTag.SUM_CP2:
            return f"sum:{self.m},{self.n}"
        if self.tag in (BaseTag.SUM_S2XS2, BaseTag.SUM_S3XS1):
            return f"{self.tag.value}:{self.n}"
        return self.tag.value

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return _ORDER.index(self.tag), self.m, self.n

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ClassWitness:
    """Single class φ with φ·φ = sign·d."""

    phi: HomologyClass
    d: int
    sign: int = 1
    canonical: HomologyClass | None = None

    def residual(self, form: GramForm) -> int:
        return form.pair(self.phi.coords, self.phi.coords) - self.sign * self.d

    def to_json(self, form: GramForm | None = None) -> dict:
        out: dict[str, Any] = {"type": "class", "phi": self.phi.to_json(), "d": self.d, "sign": self.sign}
        if self.canonical is not None:
            out["canonical"] = self.canonical.to_json()
        if form is not None:
            out["residual"] = self.residual(form)
        return out


Witness = ClassWitness | PairWitness | SublatticeEmbedding | tuple


def witness_to_json(witness: Witness, form: GramForm) -> dict:
    if isinstance(witness, ClassWitness):
        return witness.to_json(form)
    if isinstance(witness, PairWitness):
        return {"type": "pair", **witness.to_json(form)}
    if isinstance(witness, SublatticeEmbedding):
        return {"type": "sublattice", **witness.to_json()}
    return {"type": "pairs", "pairs": [w.to_json(form) for w in witness]}


def witness_from_json(data: dict, form: GramForm) -> Witness:
    kind = data["type"]
    cls = lambda coords, basis=form.basis_id: HomologyClass(tuple(coords), basis)  # noqa: E731
    if kind == "class":
        canonical = cls(data["canonical"], "canonical") if "canonical" in data else None
        return ClassWitness(cls(data["phi"]), data["d"], data.get("sign", 1), canonical)
    if kind == "pair":
        return _pair_from_json(data, form)
    if kind == "pairs":
        return tuple(_pair_from_json(p, form) for p in data["pairs"])
    canonical = tuple(cls(g, "canonical") for g in data.get("canonical_generators", ()))
    return SublatticeEmbedding(
        form,
        tuple(cls(g) for g in data["generators"]),
        tuple(tuple(r) for r in data["target_gram"]),
        canonical,
    )


def _pair_from_json(data: dict, form: GramForm) -> PairWitness:
    canonical = None
    if "canonical" in data:
        canonical = tuple(HomologyClass(tuple(c), "canonical") for c in data["canonical"])
    return PairWitness(
        HomologyClass(tuple(data["phi1"]), form.basis_id),
        HomologyClass(tuple(data["phi2"]), form.basis_id),
        data["n"],
        data["d"],
        canonical,
    )


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome for one base.

    feasible is None when the answer is undetermined (inconclusive search or
    an unasserted fundamental-group condition).
    """

    base: BaseManifold
    feasible: bool | None
    criterion: str
    reason: tuple[str, ...] = ()
    immersed_degree: int | None = None
    embedded_degree: int | None = None
    witnesses: tuple[tuple[str, Witness], ...] = ()
    caveats: tuple[str, ...] = ()
    # a bounded lattice search gave up before the answer was settled
    inconclusive: bool = False

    def __post_init__(self):
        for d in (self.immersed_degree, self.embedded_degree):
            if d is not None and d not in cfg.ADMISSIBLE_DEGREES:
                raise ValueError(f"degree {d} is not one of {cfg.ADMISSIBLE_DEGREES}")

    def witness(self, role: str) -> Witness | None:
        return dict(self.witnesses).get(role)

    def to_dict(self, form: GramForm) -> dict:
        return {
            "base": self.base.label,
            "feasible": self.feasible,
            "criterion": self.criterion,
            "reason": list(self.reason),
            "immersed_degree": self.immersed_degree,
            "embedded_degree": self.embedded_degree,
            "degree_note": "guaranteed upper bound, not a minimal degree",
            "witnesses": {role: witness_to_json(w, form) for role, w in self.witnesses},
            "caveats": list(self.caveats),
            "inconclusive": self.inconclusive,
        }

    @classmethod
    def from_dict(cls, data: dict, form: GramForm) -> "FeasibilityReport":
        return cls(
            base=BaseManifold.parse(data["base"]),
            feasible=data["feasible"],
            criterion=data["criterion"],
            reason=tuple(data["reason"]),
            immersed_degree=data["immersed_degree"],
            embedded_degree=data["embedded_degree"],
            witnesses=tuple((role, witness_from_json(w, form)) for role, w in data["witnesses"].items()),
            caveats=tuple(data["caveats"]),
            inconclusive=data.get("inconclusive", False),
        )


@dataclass(frozen=True)
class CoveringPlan:
    """Covering of a pair (M; F) onto a standard pair."""

    kind: str
    covered: bool
    target: str = ""
    degree: int | None = None
    embedded_branch: bool = False
    parameters: tuple[tuple[str, int], ...] = ()
    branch_data: tuple[tuple[str, BranchData], ...] = ()
    notes: tuple[str, ...] = ()
    variants: tuple["CoveringPlan", ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "covered": self.covered,
            "target": self.target,
            "degree": self.degree,
            "branch": "embedded" if self.embedded_branch else "immersed",
            "parameters": dict(self.parameters),
            "branch_data": {label: data.to_json() for label, data in self.branch_data},
            "notes": list(self.notes),
            "variants": [v.to_dict() for v in self.variants],
        }
