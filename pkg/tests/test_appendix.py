import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from katosurf.appendix import (
    baum_bott_check,
    corner_matrix,
    cramer_determinant_closed,
    cramer_determinant_expanded,
    degree_bounds,
    first_case_sweep,
    first_case_tuples,
    identity_by_interpolation,
    second_case_table,
)
from katosurf.errors import InputError
from katosurf.exact import ExactComplex
from katosurf.geometry import dimension_formulas, sequence_and_invariants
from katosurf.sampling import random_spec


def test_corner_matrix_examples():
    m = corner_matrix("S")
    assert m.rows() == ((0, 1), (1, 1))
    for k in range(1, 7):
        assert corner_matrix("S" + "T" * (k - 1)).rows() == ((0, 1), (1, k))
    with pytest.raises(InputError):
        corner_matrix("")


def test_corner_matrix_unimodular_exhaustive():
    for length in range(1, 13):
        for word in product("ST", repeat=length):
            assert abs(corner_matrix(word).det) == 1


def test_closed_form_examples():
    assert cramer_determinant_closed(1, 1, 1, 2, 1, 1) == -2
    assert cramer_determinant_expanded(1, 1, 1, 2, 1, 1) == -2
    assert cramer_determinant_closed(3, 1, 2, 5, 4, 0) == 0
    assert cramer_determinant_closed(2, 1, 4, 2, 3, 7) == 0


@given(st.integers(0, 10**6))
def test_expansion_matches_closed_form(seed):
    rng = random.Random(seed)
    p, q, r, s, l = (rng.randint(-20, 20) for _ in range(5))
    a0 = ExactComplex(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    assert cramer_determinant_expanded(p, q, r, s, l, a0) == cramer_determinant_closed(p, q, r, s, l, a0)


def test_leibniz_agrees_with_elimination():
    for pt in [(1, 1, 1, 2, 1, 3), (0, 1, 1, 4, 2, "1/2"), (2, 3, 5, 7, 4, "1+i")]:
        assert cramer_determinant_expanded(*pt, method="leibniz") == cramer_determinant_expanded(*pt)


def test_polynomial_identity():
    assert degree_bounds() == {"p": 2, "q": 2, "r": 2, "s": 2, "l": 1, "a0": 4}
    check = identity_by_interpolation()
    assert check.holds and check.points == 3 ** 4 * 2 * 5


def test_first_case_nonvanishing():
    tuples = first_case_tuples(15)
    assert (1, 1, 1, 2) in tuples and all(abs(p * s - q * r) == 1 for p, q, r, s in tuples)
    result = first_case_sweep(15, a0="2/3-i")
    assert result.zeros == []
    assert result.checked == len(tuples) * 15


def test_second_case_by_expansion():
    table = second_case_table(4, 3)
    assert all(v == m + l for (m, l), v in table.items())


def test_baum_bott():
    b = baum_bott_check(2, 5)
    assert (b.det_f, b.tr_f, b.h1_tf_no_vf, b.h1_tf_with_vf) == (2, -1, 1, 2)
    assert baum_bott_check(4, 12).h1_tf_no_vf == 0
    assert baum_bott_check(3, 6).h1_tf_no_vf == 3
    with pytest.raises(InputError):
        baum_bott_check(2, 7)


@given(st.integers(0, 10**6))
def test_baum_bott_matches_log_deformations(seed):
    geo = sequence_and_invariants(random_spec(random.Random(seed)))
    assert baum_bott_check(geo.n, geo.sigma_n).h1_tf_no_vf == dimension_formulas(geo).h1_log_theta
