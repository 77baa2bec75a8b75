import pytest

from algorithms import planner
from algorithms.classify import DONALDSON_NOTE
from algorithms.lattice import orthogonal_sum
from algorithms.witness import embedded_bundle_degree
from core.errors import DegreeTooSmall, HypothesisFailed, InputError, InvalidBase
from model.lattice import GramForm, PairWitness
from model.manifold import BaseManifold, BaseTag, ClassWitness, ManifoldInvariants
from tests.helpers import E8, HYP, conjugate, random_diagonal, random_unimodular

CP2 = ManifoldInvariants(GramForm.diagonal([1]))
ODD2 = ManifoldInvariants(GramForm.diagonal([1, -1]))
EVEN2 = ManifoldInvariants(HYP)


def _by_label(reports):
    return {r.base.label: r for r in reports}


def _decide(inv, text):
    return planner.decide(inv, BaseManifold.parse(text))


def _outcome(report):
    w = report.witness("embedded")
    return report.feasible, report.immersed_degree, report.embedded_degree, getattr(w, "d", None)


@pytest.mark.parametrize(
    "inv, base, expected",
    [
        (CP2, "CP2", (True, 4, 9)),
        (CP2, "CP2bar", (False, None, None)),
        (CP2, "S2xS2", (False, None, None)),
        (CP2, "S3xS1", (False, None, None)),
        (ODD2, "CP2", (True, 4, 5)),
        (ODD2, "CP2bar", (True, 4, 5)),
        (ODD2, "S2xS2", (True, 4, 6)),
        (ODD2, "S2twistedS2", (True, 4, 5)),
        (ODD2, "sum:1,1", (True, 4, 9)),
        (EVEN2, "CP2", (True, 4, 6)),
        (EVEN2, "CP2bar", (True, 4, 6)),
        (EVEN2, "S2xS2", (True, 4, 5)),
        (EVEN2, "S2twistedS2", (True, 4, 6)),
        (EVEN2, "sum:1,1", (True, 4, 9)),
        (EVEN2, "sum:2,0", (False, None, None)),
    ],
)
def test_degree_table(inv, base, expected):
    report = _decide(inv, base)
    assert (report.feasible, report.immersed_degree, report.embedded_degree) == expected


def test_cp2_witnesses_carry_their_degree():
    report = _decide(ODD2, "CP2")
    immersed, embedded = report.witness("immersed"), report.witness("embedded")
    assert isinstance(immersed, ClassWitness) and immersed.d == 4
    assert embedded.phi.coords == (3, 2) and embedded.d == 5
    assert embedded.residual(ODD2.form) == 0
    assert report.witness("characteristic") is None


def test_cp2bar_witness_has_negative_square():
    report = _decide(ODD2, "CP2bar")
    w = report.witness("embedded")
    assert w.sign == -1
    assert ODD2.form.pair(w.phi.coords, w.phi.coords) == -5


def test_characteristic_witness_when_signature_is_odd():
    report = _decide(CP2, "CP2")
    w = report.witness("characteristic")
    assert (w.phi.coords, w.d) == ((3,), 9)


def test_sum_normalizes_to_projective_plane():
    inv = ManifoldInvariants(orthogonal_sum([E8, HYP]))
    report = _decide(inv, "sum:1,0")
    assert report.base.label == "CP2"
    assert (report.feasible, report.embedded_degree) == (True, 6)


def test_even_sum_uses_six_frame():
    inv = ManifoldInvariants(orthogonal_sum([E8, HYP]))
    report = _decide(inv, "sum:2,1")
    assert (report.feasible, report.embedded_degree) == (True, 6)
    sub = report.witness("embedded")
    assert [sub.target_gram[i][i] for i in range(3)] == [6, 6, -6]


def test_small_even_sum_reports_nine_with_caveat():
    report = _decide(EVEN2, "sum:1,1")
    assert report.embedded_degree == 9
    assert any("S2twistedS2" in c for c in report.caveats)
    assert any("<6>" in c for c in report.caveats)


def test_handle_sum_on_two_planes():
    inv = ManifoldInvariants(orthogonal_sum([HYP, HYP]))
    report = _decide(inv, "s2s2sum:2")
    assert (report.feasible, report.immersed_degree, report.embedded_degree) == (True, 4, 5)
    pairs = report.witness("embedded")
    assert len(pairs) == 2 and all(isinstance(p, PairWitness) for p in pairs)
    assert _decide(inv, "s2s2sum:3").feasible is False


def test_circle_sums():
    inv = ManifoldInvariants(GramForm(()), b1=3)
    report = _decide(inv, "s3s1sum:2")
    assert report.feasible is None
    assert not report.inconclusive
    assert report.caveats
    assert _decide(ManifoldInvariants(GramForm(()), b1=1), "s3s1sum:2").feasible is False
    assert _decide(ManifoldInvariants(GramForm(()), b1=3, free_quotient_rank=2), "s3s1sum:2").feasible is True
    assert _decide(ManifoldInvariants(GramForm(()), b1=3, free_quotient_rank=1), "s3s1sum:2").feasible is False


def test_circle_base_uses_b1():
    report = _decide(ManifoldInvariants(GramForm(()), b1=1), "S3xS1")
    assert (report.feasible, report.immersed_degree, report.embedded_degree) == (True, 4, 5)
    assert _decide(CP2, "S3xS1").feasible is False


def test_obstructed_form_is_infeasible_everywhere():
    inv = ManifoldInvariants(E8, b1=1)
    for report in planner.decide_all(inv):
        assert report.feasible is False
        assert DONALDSON_NOTE in report.caveats


def test_decide_all_covers_every_base():
    reports = planner.decide_all(CP2, 2)
    assert [r.base.label for r in reports] == [
        "CP2", "CP2bar", "S2xS2", "S2twistedS2", "S3xS1",
        "sum:0,2", "sum:1,1", "sum:2,0", "s2s2sum:2", "s3s1sum:2",
    ]
    assert [r.base.label for r in reports if r.feasible] == ["CP2"]


def test_all_bases_rejects_empty_range():
    with pytest.raises(InvalidBase):
        planner.all_bases(0)
    assert len(planner.all_bases(1)) == 5


def test_indefinite_forms_cover_the_four_simple_bases(rng):
    for _ in range(10):
        rank = int(rng.integers(2, 5))
        base = random_diagonal(rng, rank)
        if base.is_definite:
            continue
        inv = ManifoldInvariants(conjugate(base, random_unimodular(rng, rank)))
        got = _by_label(planner.decide_all(inv, 1))
        for label in ("CP2", "CP2bar", "S2xS2", "S2twistedS2"):
            assert got[label].feasible is True


def test_duality_under_orientation_reversal(rng):
    for _ in range(50):
        rank = int(rng.integers(1, 5))
        form = conjugate(random_diagonal(rng, rank), random_unimodular(rng, rank))
        inv, neg = ManifoldInvariants(form), ManifoldInvariants(form.negated())
        assert _outcome(_decide(inv, "CP2")) == _outcome(_decide(neg, "CP2bar"))
        for m, n in ((2, 0), (1, 1), (0, 2), (2, 1)):
            assert _outcome(_decide(inv, f"sum:{m},{n}")) == _outcome(_decide(neg, f"sum:{n},{m}"))


def test_monotone_in_summand_counts():
    inv = ManifoldInvariants(GramForm.diagonal([1, 1, -1]))
    ctx = planner.PlannerContext(inv)
    feasible = {
        (m, n): planner.decide(inv, BaseManifold(BaseTag.SUM_CP2, m, n), ctx).feasible
        for m in range(4)
        for n in range(3)
        if m + n
    }
    for (m, n), ok in feasible.items():
        if ok:
            for (m2, n2), ok2 in feasible.items():
                if m2 <= m and n2 <= n:
                    assert ok2


def test_decide_is_pure():
    inv = ManifoldInvariants(orthogonal_sum([HYP, GramForm.diagonal([1])]))
    assert _decide(inv, "sum:1,1") == _decide(inv, "sum:1,1")


def test_search_exhaustion_is_inconclusive(no_search):
    report = _decide(ODD2, "CP2")
    assert report.feasible is None
    assert report.inconclusive
    assert _decide(ODD2, "S3xS1").feasible is False


def test_embedded_bundle_degree_table():
    assert [embedded_bundle_degree(p, n) for p in ("odd", "even") for n in (0, 1)] == [6, 5, 5, 6]


# relative constructions


def test_plan_surface():
    plan = planner.plan_surface(5)
    assert (plan.covered, plan.target, plan.degree, plan.embedded_branch) == (True, "(CP2; CP1)", 5, True)
    plan = planner.plan_surface(-4)
    assert (plan.target, plan.degree, plan.embedded_branch) == ("(CP2bar; CP1)", 4, False)
    assert not planner.plan_surface(3).covered


def test_plan_surface_with_genus():
    plan = planner.plan_surface(5, genus=1)
    params = dict(plan.parameters)
    assert params["branch_points"] == 10
    assert params["tubular_euler"] == 5
    assert [label for label, _ in plan.branch_data] == ["F -> S2"]
    assert "tubular neighbourhood of F is D(genus 1, e = 5), pulled back from D(genus 0, e = 1)" in plan.notes
    assert dict(planner.plan_surface(-6, genus=0).parameters)["tubular_euler"] == -6
    with pytest.raises(InputError):
        planner.plan_surface(5, genus=-1)


@pytest.mark.parametrize(
    "f11, f12, target, n",
    [
        (10, 5, "(S2xS2; S2_1, S2_2)", 2),
        (5, 5, "(S2twistedS2; S2_1, S2_2)", 1),
        (0, 4, "(S2xS2; S2_1, S2_2)", 0),
        (-6, 6, "(S2twistedS2; S2_1, S2_2)", -1),
    ],
)
def test_plan_surface_pair(f11, f12, target, n):
    plan = planner.plan_surface_pair(f11, f12, 0)
    assert plan.target == target
    assert dict(plan.parameters)["n"] == n
    assert plan.degree == f12


@pytest.mark.parametrize(
    "args, equation",
    [((5, 5, 1), "F2.F2 = 0"), ((6, 3, 0), "F1.F2 = d >= 4"), ((7, 5, 0), "F1.F1 = n*d")],
)
def test_plan_surface_pair_hypotheses(args, equation):
    with pytest.raises(HypothesisFailed) as err:
        planner.plan_surface_pair(*args)
    assert err.value.equation == equation


def test_plan_3manifold():
    plan = planner.plan_3manifold(True, 4)
    assert (plan.target, plan.embedded_branch, plan.variants) == ("(S4; S3)", False, ())
    plan = planner.plan_3manifold(False, 6)
    assert plan.target == "(S3xS1; S3)"
    assert [v.target for v in plan.variants] == ["(S4; S3)"]
    assert planner.plan_3manifold(False, 7, into_sphere=True).target == "(S4; S3)"
    with pytest.raises(DegreeTooSmall):
        planner.plan_3manifold(False, 5, into_sphere=True)
    with pytest.raises(DegreeTooSmall):
        planner.plan_3manifold(True, 3)


def test_plan_trivialized_link():
    plan = planner.plan_trivialized_link(2, [0, 0], [0, 1], 5, [1, 2])
    assert plan.target == "(S4; T_2)"
    assert [label for label, _ in plan.branch_data] == ["F_2 -> S2"]
    assert plan.variants[0].degree == 8
    single = planner.plan_trivialized_link(3, [0, 0, 0], [0, 0, 0], 4, [1, 1, 1], single_sphere=True)
    assert (single.target, single.degree) == ("(S4; S2)", 12)


def test_plan_trivialized_link_trivial_covering_note():
    plan = planner.plan_trivialized_link(1, [0], [0], 4, [1])
    assert any("trivial" in n for n in plan.notes)
    assert plan.variants == ()


@pytest.mark.parametrize(
    "args, equation",
    [
        ((1, [2], [0], 5, [1]), "F_i.F_i = 0"),
        ((1, [0], [0], 5, [4]), "1 <= d_i <= d - 2"),
        ((1, [0], [2], 5, [1]), "d_i = 1 only on spheres"),
    ],
)
def test_plan_trivialized_link_hypotheses(args, equation):
    with pytest.raises(HypothesisFailed) as err:
        planner.plan_trivialized_link(*args)
    assert err.value.equation == equation


def test_plan_trivialized_link_input_checks():
    with pytest.raises(InputError):
        planner.plan_trivialized_link(2, [0], [0, 0], 5, [1, 1])
    with pytest.raises(DegreeTooSmall):
        planner.plan_trivialized_link(1, [0], [0], 3, [1])
    with pytest.raises(HypothesisFailed) as err:
        planner.plan_trivialized_link(1, [0], [0], 5, [1], single_sphere=True)
    assert err.value.equation == "k >= 2"


def test_definite_identity_covers_only_cp2_among_simple_bases():
    got = _by_label(planner.decide_all(ManifoldInvariants(GramForm.diagonal([1, 1, 1])), 1))
    assert [label for label in ("CP2", "CP2bar", "S2xS2", "S2twistedS2") if got[label].feasible] == ["CP2"]
