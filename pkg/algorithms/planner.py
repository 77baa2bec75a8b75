"""Feasibility of branched coverings onto standard 4-manifolds.

Each family of bases has a CoveringRule that applies its iff-condition on the
invariants, attaches verified witnesses and reports the guaranteed degree
bounds. The plan_* functions check the hypotheses of the relative
constructions for surfaces, surface pairs, 3-manifolds and trivialized links.
"""

from __future__ import annotations

import logging
from typing import Sequence

from algorithms import monodromy
from algorithms.classify import DONALDSON_NOTE, classify
from algorithms.lattice import negate
from algorithms.witness import (
    bundle_witness,
    characteristic_cp2_witness,
    cp2_witness,
    embedded_bundle_degree,
    lambda_sublattice,
    pair_family,
)
from core import config as cfg
from core.errors import (
    DegreeTooSmall,
    HypothesisFailed,
    InputError,
    InvalidBase,
    ParityMismatch,
    RankInsufficient,
    SearchExhausted,
)
from model.covering import DiskBundleLabel
from model.lattice import Classification
from model.manifold import (
    BaseManifold,
    BaseTag,
    ClassWitness,
    CoveringPlan,
    FeasibilityReport,
    ManifoldInvariants,
)

logger = logging.getLogger(__name__)

EMBEDDED_THRESHOLD = 5


class PlannerContext:
    """Classifications of the form and of its negative, computed once per input."""

    def __init__(self, inv: ManifoldInvariants):
        self.inv = inv
        self._results: dict[bool, Classification | SearchExhausted] = {}

    @property
    def form(self):
        return self.inv.form

    def classification(self, negated: bool = False) -> Classification:
        if negated not in self._results:
            form = negate(self.form) if negated else self.form
            try:
                self._results[negated] = classify(form)
            except SearchExhausted as exc:
                logger.warning("classification inconclusive: %s", exc)
                self._results[negated] = exc
        result = self._results[negated]
        if isinstance(result, SearchExhausted):
            raise result
        return result

    @property
    def obstructed(self) -> bool:
        """Definite form that no closed 4-manifold carries."""
        form = self.form
        return form.rank > 0 and form.is_definite and not self.classification().recognized

    def positive(self, negated: bool) -> int:
        return self.form.signature_neg if negated else self.form.signature_pos


class CoveringRule:
    """Base rule: the condition for one base, its degrees and its witnesses."""

    criterion = ""
    # witnesses come from the classification of the form (or of its negative)
    uses_form = True
    negated = False

    def __init__(self, base: BaseManifold):
        self.base = base

    def condition(self, ctx: PlannerContext) -> tuple[bool | None, list[str]]:
        raise NotImplementedError

    def degrees(self, ctx: PlannerContext) -> tuple[int, int]:
        raise NotImplementedError

    def witnesses(self, ctx: PlannerContext, embedded: int) -> list[tuple[str, object]]:
        return []

    def caveats(self, ctx: PlannerContext) -> list[str]:
        return []

    def decide(self, ctx: PlannerContext) -> FeasibilityReport:
        try:
            if ctx.obstructed:
                return self._report(False, ["form is definite and not +-identity"], caveats=[DONALDSON_NOTE])
        except SearchExhausted as exc:
            return self._report(None, ["definite form could not be classified"], caveats=[str(exc)], inconclusive=True)
        holds, trace = self.condition(ctx)
        if not holds:
            return self._report(holds, trace, caveats=self.caveats(ctx))
        immersed, embedded = self.degrees(ctx)
        try:
            witnesses = self.witnesses(ctx, embedded)
        except SearchExhausted as exc:
            trace.append("witness construction needs a classification")
            return self._report(
                None, trace, immersed, embedded, caveats=[f"classification inconclusive: {exc}"], inconclusive=True
            )
        except RankInsufficient as exc:
            trace.append("witness construction ran out of recognized summands")
            return self._report(None, trace, immersed, embedded, caveats=[str(exc)])
        caveats = self.caveats(ctx)
        if self.uses_form:
            caveats.extend(ctx.classification(self.negated).diagnostics)
        return self._report(True, trace, immersed, embedded, witnesses, caveats)

    def _report(self, feasible, trace, immersed=None, embedded=None, witnesses=(), caveats=(), inconclusive=False):
        report = FeasibilityReport(
            base=self.base,
            feasible=feasible,
            criterion=self.criterion,
            reason=tuple(trace),
            immersed_degree=immersed if feasible is not False else None,
            embedded_degree=embedded if feasible is not False else None,
            witnesses=tuple(witnesses),
            caveats=tuple(caveats),
            inconclusive=inconclusive,
        )
        logger.info("%s: feasible=%s (%s)", self.base, feasible, "; ".join(trace))
        return report


def _class_witness(classification: Classification, phi, d: int, sign: int) -> ClassWitness:
    canonical = classification.change.to_target(phi)
    return ClassWitness(phi, d, sign, canonical)


class ProjectivePlaneRule(CoveringRule):
    def __init__(self, base: BaseManifold):
        super().__init__(base)
        self.negated = base.tag == BaseTag.CP2BAR
        self.criterion = "b2- >= 1" if self.negated else "b2+ >= 1"

    def condition(self, ctx):
        side = "b2-" if self.negated else "b2+"
        count = ctx.positive(self.negated)
        return count >= 1, [f"{side} = {count} {'>=' if count >= 1 else '<'} 1"]

    def degrees(self, ctx):
        form = ctx.form
        if form.rank == 1:
            return cfg.IMMERSED_DEGREE, 9
        return cfg.IMMERSED_DEGREE, 6 if form.is_even else 5

    def witnesses(self, ctx, embedded):
        classification = ctx.classification(self.negated)
        sign = -1 if self.negated else 1
        out = []
        for role, flag in (("immersed", False), ("embedded", True)):
            phi, d = cp2_witness(classification, flag)
            out.append((role, _class_witness(classification, phi, d, sign)))
        try:
            phi, d = characteristic_cp2_witness(classification)
        except ParityMismatch:
            pass
        else:
            out.append(("characteristic", _class_witness(classification, phi, d, sign)))
        return out


class BundleRule(CoveringRule):
    criterion = "b2+ >= 1 and b2- >= 1"

    def __init__(self, base: BaseManifold):
        super().__init__(base)
        self.twisted = base.tag == BaseTag.S2TWISTEDS2

    def condition(self, ctx):
        form = ctx.form
        holds = form.signature_pos >= 1 and form.signature_neg >= 1
        return holds, [f"b2+ = {form.signature_pos}, b2- = {form.signature_neg}: {'indefinite' if holds else 'definite'}"]

    def degrees(self, ctx):
        return cfg.IMMERSED_DEGREE, embedded_bundle_degree(ctx.form.parity, int(self.twisted))

    def witnesses(self, ctx, embedded):
        classification = ctx.classification()
        return [
            ("immersed", bundle_witness(classification, self.twisted, embedded=False)),
            ("embedded", bundle_witness(classification, self.twisted, embedded=True)),
        ]


class CircleRule(CoveringRule):
    criterion = "b1 >= 1"
    uses_form = False

    def condition(self, ctx):
        b1 = ctx.inv.b1
        return b1 >= 1, [f"b1 = {b1} {'>=' if b1 >= 1 else '<'} 1"]

    def degrees(self, ctx):
        return cfg.IMMERSED_DEGREE, 5


class ConnectedSumRule(CoveringRule):
    criterion = "b2+ >= m and b2- >= n"

    def condition(self, ctx):
        form, m, n = ctx.form, self.base.m, self.base.n
        holds = form.signature_pos >= m and form.signature_neg >= n
        return holds, [f"b2+ = {form.signature_pos} vs m = {m}, b2- = {form.signature_neg} vs n = {n}"]

    def _rank_enough(self, ctx) -> bool:
        return ctx.form.rank >= 2 * (self.base.m + self.base.n)

    def degrees(self, ctx):
        if not self._rank_enough(ctx):
            return cfg.IMMERSED_DEGREE, 9
        return cfg.IMMERSED_DEGREE, 6 if ctx.form.is_even else 5

    def witnesses(self, ctx, embedded):
        classification = ctx.classification()
        m, n = self.base.m, self.base.n
        k = 6 if ctx.form.is_even else embedded
        return [
            ("immersed", lambda_sublattice(classification, m, n, 4)),
            ("embedded", lambda_sublattice(classification, m, n, k)),
        ]

    def caveats(self, ctx):
        out = []
        if (self.base.m, self.base.n) == (1, 1):
            out.append("sum:1,1 is S2twistedS2, whose own criterion gives a sharper embedded bound")
        if ctx.form.is_even and not self._rank_enough(ctx):
            out.append(
                f"b2 = {ctx.form.rank} < {2 * (self.base.m + self.base.n)}: degree 9 is the stated bound, "
                "while the even construction already yields a <6> family"
            )
        return out


class HandleSumRule(CoveringRule):
    criterion = "b2+ >= n and b2- >= n"

    def condition(self, ctx):
        form, n = ctx.form, self.base.n
        holds = form.signature_pos >= n and form.signature_neg >= n
        return holds, [f"b2+ = {form.signature_pos}, b2- = {form.signature_neg} vs n = {n}"]

    def degrees(self, ctx):
        return cfg.IMMERSED_DEGREE, embedded_bundle_degree(ctx.form.parity, 0)

    def witnesses(self, ctx, embedded):
        classification = ctx.classification()
        n = self.base.n
        return [
            ("immersed", tuple(pair_family(classification, n, twisted=False, embedded=False))),
            ("embedded", tuple(pair_family(classification, n, twisted=False, embedded=True))),
        ]


class CircleSumRule(CoveringRule):
    criterion = "pi1 has a free quotient of rank n"
    uses_form = False

    def condition(self, ctx):
        n, b1, rank = self.base.n, ctx.inv.b1, ctx.inv.free_quotient_rank
        if rank is not None:
            return rank >= n, [f"asserted free quotient rank {rank} vs n = {n}"]
        if b1 < n:
            return False, [f"b1 = {b1} < n = {n}: no free quotient of rank {n}"]
        return None, [f"b1 = {b1} >= n = {n} is necessary but does not decide the free quotient"]

    def degrees(self, ctx):
        return cfg.IMMERSED_DEGREE, 5

    def caveats(self, ctx):
        if ctx.inv.free_quotient_rank is None:
            return ["free_quotient_rank not asserted: feasibility undetermined"]
        return []


def make_rule(base: BaseManifold) -> CoveringRule:
    base = base.normalize()
    if base.tag in (BaseTag.CP2, BaseTag.CP2BAR):
        return ProjectivePlaneRule(base)
    if base.tag in (BaseTag.S2XS2, BaseTag.S2TWISTEDS2):
        return BundleRule(base)
    if base.tag == BaseTag.S3XS1:
        return CircleRule(base)
    if base.tag == BaseTag.SUM_CP2:
        return ConnectedSumRule(base)
    if base.tag == BaseTag.SUM_S2XS2:
        return HandleSumRule(base)
    if base.tag == BaseTag.SUM_S3XS1:
        return CircleSumRule(base)
    raise InvalidBase("base", f"no rule for {base}")


def decide(inv: ManifoldInvariants, base: BaseManifold, ctx: PlannerContext | None = None) -> FeasibilityReport:
    return make_rule(base).decide(ctx or PlannerContext(inv))


def all_bases(max_sum: int) -> list[BaseManifold]:
    if max_sum < 1:
        raise InvalidBase("max_sum", f"must be at least 1, got {max_sum}")
    bases = [BaseManifold(t) for t in (BaseTag.CP2, BaseTag.CP2BAR, BaseTag.S2XS2, BaseTag.S2TWISTEDS2, BaseTag.S3XS1)]
    for total in range(2, max_sum + 1):
        bases.extend(BaseManifold(BaseTag.SUM_CP2, m, total - m) for m in range(total + 1))
        bases.append(BaseManifold(BaseTag.SUM_S2XS2, 0, total))
        bases.append(BaseManifold(BaseTag.SUM_S3XS1, 0, total))
    return sorted(bases, key=lambda b: b.sort_key)


_REMARK_BASES = (BaseTag.CP2, BaseTag.CP2BAR, BaseTag.S2XS2, BaseTag.S2TWISTEDS2)


def decide_all(inv: ManifoldInvariants, max_sum: int = cfg.DEFAULT_MAX_SUM) -> list[FeasibilityReport]:
    ctx = PlannerContext(inv)
    reports = [decide(inv, base, ctx) for base in all_bases(max_sum)]
    form = inv.form
    if form.signature_pos >= 1 and form.signature_neg >= 1:
        failed = [r.base.label for r in reports if r.base.tag in _REMARK_BASES and r.feasible is False]
        if failed:
            logger.warning("indefinite form yet infeasible for %s", ", ".join(failed))
    return reports


# Relative constructions


def _embedded(d: int) -> bool:
    return d >= EMBEDDED_THRESHOLD


def _branch_note(d: int) -> str:
    return f"branch surface {'embedded' if _embedded(d) else 'self-transversally immersed'} at d = {d}"


def plan_surface(f_self: int, genus: int | None = None) -> CoveringPlan:
    """(M; F) over (CP2; CP1) or (CP2bar; CP1) with d = |F·F| when d >= 4."""
    d = abs(f_self)
    if d < cfg.IMMERSED_DEGREE:
        return CoveringPlan("surface", False, parameters=(("self_intersection", f_self),),
                            notes=(f"|F.F| = {d} < 4: not covered",))
    target = "(CP2; CP1)" if f_self > 0 else "(CP2bar; CP1)"
    notes = [_branch_note(d)]
    branch = ()
    params = [("self_intersection", f_self), ("d", d)]
    if genus is not None:
        if genus < 0:
            raise InputError("genus", f"must be non-negative, got {genus}")
        data = monodromy.stabilized_two_fold(genus, d)
        line_bundle = DiskBundleLabel(0, 1 if f_self > 0 else -1)
        tubular = monodromy.pullback_bundle(line_bundle, data)
        if tubular.base_genus != genus:
            raise HypothesisFailed("g(cover) = g(F)", f"stabilized covering has genus {tubular.base_genus}")
        if tubular.euler != f_self:
            raise HypothesisFailed("d * e = F.F", f"{d} * {line_bundle.euler} = {tubular.euler}")
        branch = (("F -> S2", data),)
        params += [("genus", genus), ("branch_points", len(data)), ("tubular_euler", tubular.euler)]
        notes.append(f"tubular neighbourhood of F is {tubular}, pulled back from {line_bundle}")
        notes.append(f"boundary covering branched over {monodromy.branch_disk_count(genus, d)} Hopf fibres")
    return CoveringPlan("surface", True, target, d, _embedded(d), tuple(params), branch, tuple(notes))


def plan_surface_pair(f11: int, f12: int, f22: int) -> CoveringPlan:
    """(M; F1, F2) over an S2-bundle over S2 with a section of self-intersection n and a fibre."""
    if f22 != 0:
        raise HypothesisFailed("F2.F2 = 0", f"F2.F2 = {f22}")
    d = f12
    if d < cfg.IMMERSED_DEGREE:
        raise HypothesisFailed("F1.F2 = d >= 4", f"F1.F2 = {d}")
    if f11 % d:
        raise HypothesisFailed("F1.F1 = n*d", f"{f11} is not a multiple of {d}")
    n = f11 // d
    target = "(S2xS2; S2_1, S2_2)" if n % 2 == 0 else "(S2twistedS2; S2_1, S2_2)"
    section, fibre = monodromy.euler_pullback(d, n), monodromy.euler_pullback(d, 0)
    notes = (
        _branch_note(d),
        f"section of self-intersection {n} pulls back to e = {section}, fibre to e = {fibre}",
    )
    params = (("n", n), ("d", d), ("section_euler", section), ("fibre_euler", fibre))
    return CoveringPlan("pair", True, target, d, _embedded(d), params, (), notes)


def plan_3manifold(disconnects: bool, d: int, into_sphere: bool = False) -> CoveringPlan:
    """(M; N) over (S4; S3) or (S3xS1; S3) for a 3-manifold N."""
    if d < cfg.IMMERSED_DEGREE:
        raise DegreeTooSmall(d, cfg.IMMERSED_DEGREE)
    variants = ()
    if not disconnects and d >= 6:
        variants = (
            CoveringPlan(
                "three-manifold", True, "(S4; S3)", d, True, (("d", d),), (),
                ("non-disconnecting N through a collar with two boundary copies",),
            ),
        )
    if into_sphere and not disconnects:
        if d < 6:
            raise DegreeTooSmall(d, 6)
        return variants[0]
    target = "(S4; S3)" if disconnects else "(S3xS1; S3)"
    return CoveringPlan("three-manifold", True, target, d, _embedded(d), (("d", d),), (), (_branch_note(d),), variants)


def plan_trivialized_link(
    count: int,
    self_intersections: Sequence[int],
    genera: Sequence[int],
    d: int,
    restriction_degrees: Sequence[int],
    single_sphere: bool = False,
) -> CoveringPlan:
    """(M; F) over (S4; T_k) for a surface with k components of trivial normal bundle."""
    for name, values in (("self_intersections", self_intersections), ("genera", genera),
                         ("restriction_degrees", restriction_degrees)):
        if len(values) != count:
            raise InputError(name, f"expected {count} entries, got {len(values)}")
    if count < 1:
        raise InputError("count", "a link needs at least one component")
    if d < cfg.IMMERSED_DEGREE:
        raise DegreeTooSmall(d, cfg.IMMERSED_DEGREE)
    for i, s in enumerate(self_intersections):
        if s != 0:
            raise HypothesisFailed("F_i.F_i = 0", f"component {i + 1} has F.F = {s}")
    branch = []
    for i, (g, di) in enumerate(zip(genera, restriction_degrees)):
        if g < 0:
            raise InputError(f"genera[{i}]", f"must be non-negative, got {g}")
        if not 1 <= di <= d - 2:
            raise HypothesisFailed("1 <= d_i <= d - 2", f"component {i + 1} has d_i = {di} with d = {d}")
        if di == 1 and g > 0:
            raise HypothesisFailed("d_i = 1 only on spheres", f"component {i + 1} has genus {g}")
        if di >= 2:
            branch.append((f"F_{i + 1} -> S2", monodromy.stabilized_two_fold(g, di)))
    notes = [_branch_note(d)]
    if all(g == 0 for g in genera) and all(di == 1 for di in restriction_degrees):
        notes.append("B_p misses T_k: p is the trivial d-fold covering over T_k")
    variants = ()
    if count >= 2:
        sphere_d = 4 * count
        variants = (
            CoveringPlan(
                "link", True, "(S4; S2)", sphere_d, True, (("k", count), ("d", sphere_d)), (),
                (f"all {count} components over a single unknotted S2 with d = 4k",),
            ),
        )
    if single_sphere:
        if count < 2:
            raise HypothesisFailed("k >= 2", "the single-sphere variant needs at least two components")
        return variants[0]
    params = (("k", count), ("d", d))
    return CoveringPlan("link", True, f"(S4; T_{count})", d, _embedded(d), params, tuple(branch), tuple(notes), variants)
