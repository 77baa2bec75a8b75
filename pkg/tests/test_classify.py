import time

import pytest

from algorithms import exact
from algorithms.classify import (
    check_definite_diagonal,
    classify,
    diagonalize_odd,
    is_characteristic_vector,
    match_e8,
    recognize_even_indefinite,
    split_hyperbolic,
)
from algorithms.lattice import orthogonal_sum
from core.errors import (
    DefiniteForm,
    NoIsotropicWithinBound,
    NotDefinite,
    NotEven,
    NotOdd,
    NotUnimodular,
    NoUnitVectorWithinBound,
)
from data.lattices import A8, H
from model.lattice import ClassificationKind, GramForm
from tests.helpers import E8, HYP, conjugate, random_diagonal, random_unimodular


def _block(form: GramForm, rows: range) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(form.entries[i][j] for j in rows) for i in rows)


def _odd_round_trip(rng, rank: int) -> None:
    base = random_diagonal(rng, rank)
    form = conjugate(base, random_unimodular(rng, rank))
    result = classify(form)
    pos, neg = base.signature_pos, base.signature_neg
    assert result.layout.diagonal == (1,) * pos + (-1,) * neg
    assert result.canonical.entries == GramForm.diagonal([1] * pos + [-1] * neg).entries
    result.verify()


def _even_round_trip(rng, base: GramForm, layout: tuple[int, int]) -> None:
    form = conjugate(base, random_unimodular(rng, base.rank))
    result = classify(form)
    assert result.kind == ClassificationKind.EVEN_INDEFINITE
    assert (result.layout.e8, result.layout.h) == layout
    result.verify()


@pytest.mark.parametrize("rank", range(2, 9))
def test_odd_forms_diagonalize_after_random_conjugation(rng, rank):
    for _ in range(5):
        _odd_round_trip(rng, rank)


@pytest.mark.parametrize(
    "summands, layout",
    [([HYP], (0, 1)), ([HYP, HYP], (0, 2)), ([E8, HYP], (1, 1))],
    ids=["H", "H+H", "E8+H"],
)
def test_even_forms_recognized_after_random_conjugation(rng, summands, layout):
    for _ in range(3):
        _even_round_trip(rng, orthogonal_sum(summands), layout)


def test_hundred_random_conjugates_within_a_minute(rng):
    evens = [(orthogonal_sum(s), layout) for s, layout in [([HYP], (0, 1)), ([HYP, HYP], (0, 2)), ([E8, HYP], (1, 1))]]
    start = time.perf_counter()
    for rank in range(2, 9):
        for _ in range(10):
            _odd_round_trip(rng, rank)
    for base, layout in evens:
        for _ in range(10):
            _even_round_trip(rng, base, layout)
    assert time.perf_counter() - start < 60


def test_diagonal_input_keeps_identity_change():
    result = classify(GramForm.diagonal([1, -1, -1]))
    assert result.kind == ClassificationKind.ODD_DIAGONAL
    assert result.change.matrix == exact.as_tuples(exact.identity(3))


def test_definite_diagonal_kind():
    result = classify(GramForm(((2, 1), (1, 1))))
    assert result.kind == ClassificationKind.DEFINITE_DIAGONAL
    assert result.layout.diagonal == (1, 1)
    assert classify(GramForm.diagonal([-1, -1])).layout.diagonal == (-1, -1)


def test_e8_plus_h_layout():
    result = classify(orthogonal_sum([E8, HYP]))
    assert result.kind == ClassificationKind.EVEN_INDEFINITE
    assert (result.layout.e8, result.layout.h, result.layout.e8_verified) == (1, 1, True)
    assert _block(result.canonical, range(0, 2)) == H
    assert _block(result.canonical, result.layout.e8_block(0)) == A8


def test_negative_e8_with_two_planes():
    form = orthogonal_sum([E8.negated(), HYP, HYP])
    result = classify(form)
    assert (result.layout.e8, result.layout.h) == (-1, 2)
    for i in range(2):
        e, f = result.layout.h_block(i)
        assert _block(result.canonical, range(e, f + 1)) == H
    negative_a8 = tuple(tuple(-x for x in row) for row in A8)
    assert _block(result.canonical, result.layout.e8_block(0)) == negative_a8
    result.verify()


def test_conjugated_hyperbolic_planes(rng):
    form = conjugate(orthogonal_sum([HYP, HYP]), random_unimodular(rng, 4))
    result = classify(form)
    assert result.layout.h == 2 and result.layout.e8 == 0
    assert result.canonical.entries == orthogonal_sum([HYP, HYP]).entries


def test_even_definite_is_unrecognized():
    result = classify(E8)
    assert result.kind == ClassificationKind.UNRECOGNIZED
    assert not result.recognized
    assert any("Donaldson" in note for note in result.diagnostics)


def test_odd_definite_non_diagonal_is_unrecognized():
    result = classify(orthogonal_sum([GramForm.diagonal([1]), E8]))
    assert result.kind == ClassificationKind.UNRECOGNIZED
    assert result.diagnostics[0].startswith("odd ")


def test_rank_zero_is_definite_diagonal():
    result = classify(GramForm(()))
    assert result.kind == ClassificationKind.DEFINITE_DIAGONAL
    assert result.layout.diagonal == ()


def test_entry_points_check_their_preconditions():
    with pytest.raises(NotOdd):
        diagonalize_odd(HYP)
    with pytest.raises(NotEven):
        recognize_even_indefinite(GramForm.diagonal([1, -1]))
    with pytest.raises(DefiniteForm):
        recognize_even_indefinite(E8)
    with pytest.raises(DefiniteForm):
        split_hyperbolic(E8)
    with pytest.raises(NotDefinite):
        check_definite_diagonal(HYP)
    with pytest.raises(NotUnimodular):
        classify(GramForm.diagonal([2, 1]))


def test_split_hyperbolic_leaves_complement():
    change, rest = split_hyperbolic(orthogonal_sum([HYP, HYP]))
    image = exact.congruence(orthogonal_sum([HYP, HYP]).matrix, change.array())
    assert exact.as_tuples(image[:2, :2]) == H
    assert rest.rank == 2 and rest.is_even and rest.signature == 0


def test_match_e8_returns_root_frame():
    frame = match_e8(E8)
    assert frame is not None
    assert exact.as_tuples(exact.congruence(E8.matrix, frame)) == A8


def test_is_characteristic_vector():
    gram = exact.int_matrix([[1, 0], [0, -1]])
    assert is_characteristic_vector(gram, (1, 1))
    assert is_characteristic_vector(gram, (3, -1))
    assert not is_characteristic_vector(gram, (2, 1))
    assert is_characteristic_vector(exact.int_matrix(H), (0, 0))


def test_empty_search_raises_for_units(no_search):
    with pytest.raises(NoUnitVectorWithinBound):
        classify(GramForm.diagonal([1, -1]))


def test_empty_search_raises_for_isotropic(no_search):
    with pytest.raises(NoIsotropicWithinBound):
        classify(HYP)


def test_definite_check_ignores_search_ceiling(no_search):
    assert classify(GramForm.diagonal([1, 1, 1])).kind == ClassificationKind.DEFINITE_DIAGONAL


def test_classification_json_shape():
    doc = classify(HYP).to_json()
    assert doc["kind"] == "EvenIndefinite"
    assert doc["layout"] == {"a": 0, "b": 1, "e8_verified": True}
    assert doc["change"]["target_basis"] == "canonical"


def test_split_hyperbolic_examples():
    _, rest = split_hyperbolic(HYP)
    assert rest.rank == 0
    _, rest = split_hyperbolic(orthogonal_sum([E8, HYP]))
    assert (rest.rank, rest.signature_pos, rest.parity, abs(rest.determinant)) == (8, 8, "even", 1)
