import random

import pytest
from hypothesis import given, strategies as st

from katosurf.builder import build_germ, fixed_point_analysis, trace_domain_check, trace_monomial
from katosurf.errors import InputError
from katosurf.exact import ExactComplex
from katosurf.model import KatoSpec, sigma_from_polys, spec_from_charts
from katosurf.sampling import random_rational, random_spec
from katosurf.series import Series2, jacobian_at_zero

seeds = st.integers(0, 10**6)


def terms(s: Series2) -> dict:
    return {e: c for e, c in s.items()}


def test_j0_germ():
    F = build_germ(spec_from_charts("pu", ["1/3", 5]), 6)
    assert terms(F.f1) == {(0, 1): 1}
    assert terms(F.f2) == {(0, 1): ExactComplex.parse("1/3"), (0, 2): 5, (1, 2): 1}


def test_j01_germ():
    F = build_germ(spec_from_charts("pp", [2, 3]), 6)
    z1, z2 = Series2.z1(6), Series2.z2(6)
    assert F.f1 == z2 * (z1 + 3)
    assert F.f2 == z2 * (z1 + 3) * (z2 + 2)


def test_corner_only_germ_is_monomial():
    F = build_germ(spec_from_charts("pp", [0, 0]), 6)
    assert len(F.f1.coeffs) == 1 and len(F.f2.coeffs) == 1


@given(seeds)
def test_trace_identities_b2(seed):
    rng = random.Random(seed)
    a0, a1 = random_rational(rng), random_rational(rng)
    t = jacobian_at_zero(build_germ(spec_from_charts("pu", [a0, a1]), 3)).trace
    assert t == a0
    t = jacobian_at_zero(build_germ(spec_from_charts("pp", [a0, a1]), 3)).trace
    assert t == a0 * a1


@given(seeds)
def test_trace_monomial_matches_jacobian(seed):
    spec = random_spec(random.Random(seed), sigma=True, gaussian=True)
    assert trace_monomial(spec).value == jacobian_at_zero(build_germ(spec, 3)).trace


def test_trace_requirements():
    with pytest.raises(InputError):
        trace_monomial(spec_from_charts("pu", [1, 1], [0, 1]))
    with pytest.warns(UserWarning):
        bad = spec_from_charts("pu", [1, 1], sigma=sigma_from_polys({(1, 0): 1}, {(1, 0): 1, (0, 1): 1}))
    with pytest.raises(InputError):
        trace_monomial(bad)


def test_trace_domain():
    assert trace_domain_check(spec_from_charts("pu", ["1/2", 1]))
    assert not trace_domain_check(spec_from_charts("pu", [1, 1]))
    assert not trace_domain_check(spec_from_charts("pp", ["3/4+3/4*i", 2]))


def test_order_validation():
    with pytest.raises(InputError):
        build_germ(spec_from_charts("pu", [1, 1]), 1)


def test_fixed_point_minimal():
    res = fixed_point_analysis(spec_from_charts("pu", ["1/2", 0]))
    assert res.fixed_point == (0j, 0j)
    assert sorted(abs(x) for x in res.eigenvalues) == [0.0, 0.5]
    assert res.contracting and res.to_json()["numeric"] is True


def test_fixed_point_newton():
    spec = spec_from_charts("pu", ["1/2", 0], [0, "1/100"])
    res = fixed_point_analysis(spec)
    assert res.converged and res.contracting
    assert res.residual < 1e-12


def test_spec_json_round_trip():
    spec = spec_from_charts("upuupp", [1, 0, 0, "2+i", 0, 0])
    assert KatoSpec.from_json(spec.to_json()) == spec


@pytest.mark.parametrize("payload, where", [
    ({"steps": []}, "spec.steps"),
    ({"steps": [{"chart": "v"}]}, "spec.steps[0].chart"),
    ({"steps": [{"chart": "u", "a": "1/0"}]}, "spec.steps[0].a"),
    ({"n": 3, "steps": [{"chart": "u"}]}, "spec.n"),
])
def test_spec_diagnostics(payload, where):
    with pytest.raises(InputError, match=where.replace("[", r"\[").replace("]", r"\]")):
        KatoSpec.from_json(payload)


@given(seeds)
def test_generic_unprimed_second_component_divisible_by_z2(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    spec = spec_from_charts("u" * n, [random_rational(rng, nonzero=True) for _ in range(n)])
    F = build_germ(spec, 6)
    assert all(k >= 1 for (_, k) in F.f2.coeffs)
