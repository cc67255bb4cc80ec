import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from katosurf.errors import InputError, SingularError
from katosurf.geometry import (
    anticanonical_index,
    build_incidence,
    canonical_rotation,
    decompose_sequence,
    dimension_formulas,
    same_cycle,
    sequence_and_invariants,
    sequence_string,
)
from katosurf.linalg import is_negative_definite, matmul
from katosurf.model import BlowupStep, Chart, KatoSpec, Kind, spec_from_charts
from katosurf.sampling import random_spec

seeds = st.integers(0, 10**6)


@pytest.mark.parametrize("word, a, classes, matrix, text, kind", [
    ("pu", [1, 1], [(1, -1), (-1, 1)], [[-2, 2], [2, -2]], "(22)", "Enoki"),
    ("up", [1, 0], [(0, -1), (-1, 1)], [[-1, 1], [1, -2]], "(3 2)", "Intermediate"),
    ("up", [0, 0], [(0, -2), (-1, 1)], [[-4, 2], [2, -2]], "(42)", "InoueHirzebruch"),
    ("pp", [0, 0], [(0, -1), (-1, 0)], [[-1, 0], [0, -1]], "(3 3)", "InoueHirzebruch"),
])
def test_two_curve_configurations(word, a, classes, matrix, text, kind):
    geo = sequence_and_invariants(spec_from_charts(word, a))
    assert [tuple(c) for c in geo.classes] == classes
    assert [list(r) for r in geo.matrix] == matrix
    assert geo.sequence_string == text
    assert geo.type_tag == kind


def test_six_curve_example():
    geo = sequence_and_invariants(spec_from_charts("upuupp", [1, 0, 0, 2, 0, 0]))
    assert geo.sequence == (4, 2, 2, 3, 3, 2)
    assert geo.sequence_string == "(42 2 3 3 2)"
    assert geo.decomposition == "s2r1s1s1r1"
    assert (geo.sigma_n, geo.l, geo.rho) == (16, 2, 2)


def test_decomposition_and_rotation():
    toks = decompose_sequence((2, 4, 2, 2))
    assert [(t.label, t.indices) for t in toks] == [("s2", (1, 2)), ("r2", (3, 0))]
    assert sequence_string((2, 4, 2, 2)) == "(2 42 2)"
    assert sequence_string((2, 4)) == "(2 4)"
    assert sequence_string((4, 2)) == "(42)"
    assert canonical_rotation((2, 3, 2, 4)) == (3, 2, 4, 2)
    assert same_cycle((2, 4), (4, 2))
    with pytest.raises(InputError):
        decompose_sequence((5, 2))


@given(seeds)
def test_random_spec_invariants(seed):
    spec = random_spec(random.Random(seed))
    geo = sequence_and_invariants(spec)
    n = spec.n
    assert 2 * n <= geo.sigma_n <= 3 * n
    assert geo.l == 3 * n - geo.sigma_n
    assert all(-geo.matrix[i][i] <= geo.sequence[i] for i in range(n))
    dims = dimension_formulas(geo)
    assert dims.h1_log_theta + dims.h1_non_log == dims.h1_theta
    assert dims.h1_tf == dims.h1_log_theta
    assert (dims.det_f, dims.tr_f) == (n, 2 * n - geo.sigma_n)
    if geo.type_tag != "Enoki":
        assert is_negative_definite(geo.matrix)


@given(seeds)
def test_all_generic_cycle_is_isotropic(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    spec = KatoSpec(tuple(BlowupStep(rng.choice(list(Chart)), 1 + rng.randint(0, 3)) for _ in range(n)))
    geo = sequence_and_invariants(spec)
    assert geo.type_tag == "Enoki"
    assert all(x == 0 for row in matmul(geo.matrix, [[1]] * n) for x in row)


def test_kind_validation():
    bad = KatoSpec((BlowupStep(Chart.PRIMED, 1, kind=Kind.CORNER), BlowupStep(Chart.UNPRIMED, 1)))
    with pytest.raises(InputError, match="corner requested"):
        build_incidence(bad)
    good = KatoSpec((BlowupStep(Chart.PRIMED, 0, kind=Kind.CORNER), BlowupStep(Chart.UNPRIMED, 1)))
    assert build_incidence(good).kinds()[0] is Kind.CORNER


def test_anticanonical_index():
    idx = anticanonical_index([[-1, 1], [1, -2]])
    assert idx.d == (Fraction(-2), Fraction(-1)) and idx.mu == 1
    with pytest.raises(SingularError):
        anticanonical_index([[-2, 2], [2, -2]])


def test_normalization_warning():
    from katosurf.model import NormalizationWarning, sigma_from_polys
    with pytest.warns(NormalizationWarning):
        spec_from_charts("pu", [0, 1], sigma=sigma_from_polys({(1, 0): 1}, {(1, 0): 1, (0, 1): 1}))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        spec_from_charts("pu", [0, 1], sigma=sigma_from_polys({(1, 0): 1, (0, 1): 2}, {(0, 1): 1}))


@given(seeds)
def test_extremes_and_trees(seed):
    spec = random_spec(random.Random(seed), n_max=7)
    geo = sequence_and_invariants(spec)
    kinds = build_incidence(spec).kinds()
    n = spec.n
    assert (geo.sigma_n == 2 * n) == all(k is Kind.GENERIC for k in kinds)
    assert (geo.sigma_n == 3 * n) == all(k is Kind.CORNER for k in kinds)
    runs = sum(1 for j in range(n) if kinds[j] is Kind.GENERIC and kinds[j - 1] is Kind.CORNER)
    if all(k is Kind.GENERIC for k in kinds):
        runs = 1
    assert geo.rho == runs
    assert [list(r) for r in geo.matrix] == [list(r) for r in zip(*geo.matrix)]
    if n >= 2:
        assert all(geo.matrix[i][i] < 0 for i in range(n))


@given(seeds)
def test_zero_trace_gives_negative_definite(seed):
    from katosurf.builder import trace_monomial
    spec = random_spec(random.Random(seed), zero_rate=0.6)
    if not trace_monomial(spec).value:
        assert is_negative_definite(sequence_and_invariants(spec).matrix)
