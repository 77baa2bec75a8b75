"""Exception hierarchy shared by every package."""

from __future__ import annotations


class CovermapError(Exception):
    """Base class for all covermap errors."""


# Input


class InputError(CovermapError):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class InvalidForm(InputError):
    pass


class DegenerateForm(InvalidForm):
    def __init__(self, path: str = "gram"):
        super().__init__(path, "form is degenerate (determinant 0)")


class InvalidInvariants(InputError):
    pass


class InvalidBase(InputError):
    pass


class InvalidBranchData(InputError):
    pass


# Lattice arithmetic


class LatticeError(CovermapError):
    pass


class DimensionMismatch(LatticeError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"expected length {expected}, got {got}")


class BasisMismatch(LatticeError):
    def __init__(self, expected: str, got: str):
        self.expected = expected
        self.got = got
        super().__init__(f"class lives in basis {got!r}, form uses {expected!r}")


class NotUnimodular(LatticeError):
    def __init__(self, det: int):
        self.det = det
        super().__init__(f"determinant {det} is not +-1")


class NotPrimitive(LatticeError):
    pass


class CongruenceVerificationError(LatticeError):
    pass


# Classification


class ClassificationError(CovermapError):
    pass


class NotOdd(ClassificationError):
    pass


class NotEven(ClassificationError):
    pass


class DefiniteForm(ClassificationError):
    pass


class NotDefinite(ClassificationError):
    pass


class InvariantMismatch(ClassificationError):
    pass


class DonaldsonObstruction(ClassificationError):
    """Definite form that is not congruent to +-identity."""


class SearchExhausted(ClassificationError):
    """Bounded search ran out before finding a vector; inconclusive."""

    def __init__(self, message: str, ceiling: int):
        self.ceiling = ceiling
        super().__init__(f"{message} (enumeration ceiling {ceiling})")


class NoUnitVectorWithinBound(SearchExhausted):
    pass


class NoIsotropicWithinBound(SearchExhausted):
    pass


# Witnesses


class WitnessError(CovermapError):
    pass


class RankInsufficient(WitnessError):
    pass


class ParityMismatch(WitnessError):
    pass


class NotFeasible(WitnessError):
    pass


class WitnessVerificationError(WitnessError):
    pass


# Plans


class PlanError(CovermapError):
    pass


class HypothesisFailed(PlanError):
    def __init__(self, equation: str, detail: str = ""):
        self.equation = equation
        super().__init__(f"hypothesis {equation} fails" + (f": {detail}" if detail else ""))


class DegreeTooSmall(PlanError):
    def __init__(self, degree: int, minimum: int):
        self.degree = degree
        self.minimum = minimum
        super().__init__(f"degree {degree} is below {minimum}")


# Branch data


class BranchDataError(CovermapError):
    pass


class OddBranchCount(BranchDataError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"{count} branch points cannot bound a closed cover")
