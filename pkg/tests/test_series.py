import random

import pytest
from hypothesis import given, strategies as st

from katosurf.errors import InputError, SingularError, TruncationError
from katosurf.exact import ExactComplex
from katosurf.sampling import random_germ, random_series
from katosurf.series import Germ2, Series2, germ_compose, germ_inverse, jacobian_at_zero

seeds = st.integers(0, 10**6)


def test_sparse_storage_and_order():
    s = Series2({(0, 0): 1, (2, 3): ExactComplex(0), (5, 5): 7}, 4)
    assert s.coeffs == {(0, 0): 1}
    assert s.order == 4
    with pytest.raises(TruncationError):
        s.truncate(6)


def test_product_order_is_minimum():
    a = Series2.z1(3) + Series2.z2(5)
    assert (a * a).order == 3


@given(seeds)
def test_ring_identities(seed):
    rng = random.Random(seed)
    a, b, c = (random_series(rng, 5, min_degree=0) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a


@given(seeds)
def test_composition_associative(seed):
    rng = random.Random(seed)
    f, g, h = (random_germ(rng, 5) for _ in range(3))
    assert germ_compose(f, germ_compose(g, h)) == germ_compose(germ_compose(f, g), h)


@given(seeds)
def test_inverse_round_trip(seed):
    rng = random.Random(seed)
    g = random_germ(rng, 5, invertible=True)
    inv = germ_inverse(g)
    ident = Germ2.identity(5)
    assert germ_compose(g, inv) == ident
    assert germ_compose(inv, g) == ident


@given(seeds, st.integers(1, 5))
def test_truncation_commutes_with_composition(seed, m):
    rng = random.Random(seed)
    f, g = random_germ(rng, 6), random_germ(rng, 6)
    assert germ_compose(f, g).truncate(m) == germ_compose(f.truncate(m), g.truncate(m))


def test_shifted_inner_needs_polynomial_outer():
    shifted = Germ2(Series2.z1(3) + 1, Series2.z2(3), affine=True)
    f = Germ2(Series2.z1(3) * Series2.z2(3), Series2.z2(3))
    with pytest.raises(TruncationError):
        germ_compose(f, shifted)
    poly = Germ2(f.f1, f.f2, polynomial=True)
    assert germ_compose(poly, shifted).f1.coeff(0, 1) == 1


def test_constant_term_rejected_without_affine():
    with pytest.raises(InputError):
        Germ2(Series2.z1(3) + 1, Series2.z2(3))


def test_singular_inverse():
    g = Germ2(Series2.z1(3) ** 2, Series2.z2(3))
    with pytest.raises(SingularError):
        germ_inverse(g)


def test_json_round_trip():
    rng = random.Random(3)
    g = random_germ(rng, 4, gaussian=True)
    assert Germ2.from_json(g.to_json()) == g


def test_derivative_and_jacobian():
    z1, z2 = Series2.z1(4), Series2.z2(4)
    g = Germ2(2 * z1 + z2 + z1 * z2, 3 * z2 + z1 ** 2)
    jac = jacobian_at_zero(g)
    assert jac.trace == 5 and jac.det == 6
    assert g.f1.derivative(2) == Series2.const(ExactComplex(1), 3) + Series2.z1(3)


def test_examples_from_definitions():
    from katosurf.series import series_add, series_mul
    z1, z2 = Series2.z1(4), Series2.z2(4)
    assert series_add(z1 + z2, z1 - z2) == 2 * z1
    low = Series2({(1, 1): 1}, 2)
    assert series_add(low, Series2({(2, 1): 1}, 3)) == low
    geom = Series2({(0, k): (-1) ** k for k in range(5)}, 4)
    assert series_mul(1 + z2, geom) == Series2.const(ExactComplex(1), 4)
    assert series_mul(z1 + z2, z2) == z1 * z2 + z2 * z2


def test_inverse_examples():
    z1, z2 = Series2.z1(6), Series2.z2(6)
    inv = germ_inverse(Germ2(2 * z1, 3 * z2))
    assert inv == Germ2(z1 * (ExactComplex(1) / 2), z2 * (ExactComplex(1) / 3))
    assert germ_inverse(Germ2(z1 + z2 ** 2, z2)) == Germ2(z1 - z2 ** 2, z2)


def test_compose_with_shifted_inner():
    z1, z2 = Series2.z1(6), Series2.z2(6)
    outer = Germ2(z2, z1 * z2 ** 2, polynomial=True)
    inner = Germ2(z1 + 1, z2, affine=True)
    assert germ_compose(outer, inner) == Germ2(z2, (z1 + 1) * z2 ** 2)
    ident = Germ2.identity(6)
    assert jacobian_at_zero(ident).trace == 2 and jacobian_at_zero(ident).det == 1
