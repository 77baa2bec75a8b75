"""Branch data of simple coverings of S² and oriented disk bundles over surfaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from core.errors import InvalidBranchData


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidBranchData(path, f"expected an integer, got {type(value).__name__}")
    return value


@dataclass(frozen=True)
class BranchData:
    """Ordered transpositions (i j), 1 ≤ i < j ≤ degree, one per branch point."""

    degree: int
    points: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        d = _int(self.degree, "degree")
        if d < 2:
            raise InvalidBranchData("degree", f"degree must be at least 2, got {d}")
        norm = []
        for k, pair in enumerate(self.points):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InvalidBranchData(f"points[{k}]", "expected a pair of sheet indices")
            i, j = (_int(x, f"points[{k}][{s}]") for s, x in enumerate(pair))
            i, j = min(i, j), max(i, j)
            if i == j:
                raise InvalidBranchData(f"points[{k}]", f"({i} {j}) is not a transposition")
            if i < 1 or j > d:
                raise InvalidBranchData(f"points[{k}]", f"sheet indices must lie in 1..{d}, got ({i} {j})")
            norm.append((i, j))
        object.__setattr__(self, "points", tuple(norm))

    @classmethod
    def repeated(cls, degree: int, pairs: Sequence[tuple[int, int]], times: int = 1) -> "BranchData":
        return cls(degree, tuple(p for p in pairs for _ in range(times)))

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {"degree": self.degree, "points": [list(p) for p in self.points]}

    def __str__(self):
        return f"S_{self.degree}: " + " ".join(f"({i} {j})" for i, j in self.points)


@dataclass(frozen=True)
class BranchVerification:
    product_identity: bool
    transitive: bool
    product: str
    closed_prefix: int
    orbit: tuple[int, ...]
    untouched: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.product_identity and self.transitive

    @property
    def violation(self) -> str | None:
        if not self.product_identity:
            return (
                f"product of the transpositions is {self.product}, not the identity; "
                f"the longest prefix closing up has {self.closed_prefix} points"
            )
        if not self.transitive:
            return f"not transitive: sheet 1 reaches only {list(self.orbit)}"
        return None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "product_identity": self.product_identity,
            "transitive": self.transitive,
            "product": self.product,
            "closed_prefix": self.closed_prefix,
            "orbit": list(self.orbit),
            "untouched": list(self.untouched),
            "violation": self.violation,
        }


@dataclass(frozen=True)
class DiskBundleLabel:
    """Oriented disk bundle over a closed genus-g surface with Euler number e."""

    base_genus: int
    euler: int

    def pullback(self, degree: int, total_genus: int) -> "DiskBundleLabel":
        return DiskBundleLabel(total_genus, degree * self.euler)

    def __str__(self):
        return f"D(genus {self.base_genus}, e = {self.euler})"
