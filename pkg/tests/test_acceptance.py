"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

All comparisons are exact: the tolerance is equality of Gaussian rationals,
integers or strings.
"""

import random

import pytest

from katosurf.appendix import first_case_sweep, identity_by_interpolation
from katosurf.builder import build_germ, trace_monomial
from katosurf.errors import ConjugacyError
from katosurf.exact import ExactComplex, QuadraticField
from katosurf.geometry import dimension_formulas, sequence_and_invariants
from katosurf.invariants import (
    kappa_by_functional_equation,
    kappa_from_favre,
    kappa_polynomial,
    solve_conjugacy,
    verify_conjugacy,
)
from katosurf.model import sigma_from_polys, spec_from_charts
from katosurf.polyring import Poly
from katosurf.sampling import random_favre, random_germ, random_rational, random_spec
from katosurf.series import Germ2, Series2, germ_compose, germ_inverse, jacobian_at_zero
from katosurf.strata import enumerate_strata, h_i_membership, solve_h_i

E = ExactComplex


@pytest.fixture
def verdict(capsys):
    def emit(k: int, label: str, failures: list):
        with capsys.disabled():
            status = "PASS" if not failures else "FAIL"
            detail = "" if not failures else f" ({len(failures)} failures, first: {failures[0]})"
            print(f"\n[{status}] criterion {k}: {label}{detail}")
        assert not failures

    return emit


def g_family(a0, a1, order=8, xi=0):
    sigma = sigma_from_polys({(1, 0): 1, (0, 1): xi}, {(0, 1): 1})
    return build_germ(spec_from_charts("pu", [a0, a1], sigma=sigma), order)


def test_criterion_1_two_curve_golden(verdict):
    cases = [
        ("pu", [1, 1], [(1, -1), (-1, 1)], [[-2, 2], [2, -2]]),
        ("up", [1, 0], [(0, -1), (-1, 1)], [[-1, 1], [1, -2]]),
        ("up", [0, 0], [(0, -2), (-1, 1)], [[-4, 2], [2, -2]]),
        ("pp", [0, 0], [(0, -1), (-1, 0)], [[-1, 0], [0, -1]]),
    ]
    failures = []
    for word, a, classes, matrix in cases:
        geo = sequence_and_invariants(spec_from_charts(word, a))
        got = ([tuple(c) for c in geo.classes], [list(r) for r in geo.matrix])
        if got != (classes, matrix):
            failures.append((word, a, got))
    verdict(1, "b2=2 classes and intersection matrices", failures)


def test_criterion_2_trace_identities(verdict):
    rng = random.Random(2)
    failures = []
    for _ in range(20):
        a0, a1 = random_rational(rng), random_rational(rng)
        if jacobian_at_zero(build_germ(spec_from_charts("pu", [a0, a1]), 3)).trace != a0:
            failures.append(("J={0}", a0, a1))
        if jacobian_at_zero(build_germ(spec_from_charts("pp", [a0, a1]), 3)).trace != a0 * a1:
            failures.append(("J={0,1}", a0, a1))
    for seed in range(100):
        spec = random_spec(random.Random(seed), n_max=6, sigma=True, gaussian=True)
        if trace_monomial(spec).value != jacobian_at_zero(build_germ(spec, 3)).trace:
            failures.append(("random", seed))
    verdict(2, "trace = a0, a0*a1 and trace monomial = jacobian trace", failures)


def test_criterion_3_kappa(verdict):
    failures = []
    coeffs = kappa_polynomial(lambda a1: g_family(0, a1), [1, 2, 3, 4, 5])
    if coeffs != [0, 0, -1]:
        failures.append(("J={0} interpolation", coeffs))
    for a in [1, 2, E(-3, 0) / 2, E(1, 1)]:
        if kappa_by_functional_equation(build_germ(spec_from_charts("pp", [0, a]), 8)).kappa != a:
            failures.append(("a0=0", a))
        if kappa_by_functional_equation(build_germ(spec_from_charts("pp", [a, 0]), 8)).kappa != a:
            failures.append(("a1=0", a))
    rng = random.Random(3)
    for _ in range(20):
        f = random_favre(rng)
        a = kappa_from_favre(f, f.min_mu).kappa
        b = kappa_by_functional_equation(f.germ(8), f.min_mu).kappa
        if a != b:
            failures.append(("favre", f, a, b))
    verdict(3, "kappa = -a1^2, a1, a0 and two routes agree on Favre germs", failures)


def test_criterion_4_conjugacy(verdict):
    failures = []
    minus = Germ2(-Series2.z1(6), -Series2.z2(6))
    for a0, a1 in [(0, 1), (E(1) / 2, 3), (0, E(2, 1))]:
        if not verify_conjugacy(g_family(a0, a1, 6), g_family(a0, -a1, 6), minus):
            failures.append(("minus identity", a0, a1))
    values = [E(1), E(-1), E(2), E(-2), E(1, 0) / 3]
    for a in values:
        for b in values:
            try:
                solve_conjugacy(g_family(0, a, 5), g_family(0, b, 5), 5)
                solvable = True
            except ConjugacyError:
                solvable = False
            if solvable != (a == b or a == -b):
                failures.append(("grid", a, b, solvable))
    w = QuadraticField(E(-1, 0) / 2).gen()
    for xi in [E(0), E(1), E(2), E(-1), E(1) / 2]:
        G = g_family(0, w, 4, xi)
        F = Germ2(Series2({(1, 1): E(1), (0, 1): E(1), (0, 2): Poly.var("c")}, 4),
                  Series2({(0, 2): E(1)}, 4))
        c = solve_conjugacy(F, G, 4).params["c"]
        if c != xi + 2:
            failures.append(("c", xi, c))
    verdict(4, "(-z1,-z2) relation, a1 = +-a1' grid, c = xi + 2", failures)


def test_criterion_5_strata(verdict):
    ih = ["(522 3 3 2)", "(42 2 3 42)", "(522 3 42)"]
    enoki = ["(222 3 3 2)", "(3 22 3 3 2)", "(42 22 3 2)", "(42 2 3 22)", "(3 222 3 2)",
             "(2222 3 2)", "(3 22 3 22)", "(222 3 22)", "(42 2222)", "(3 22222)", "(222222)"]
    strata = enumerate_strata(spec_from_charts("upuupp", [1, 0, 0, 2, 0, 0]))
    got_ih = [d.sequence_string for d in strata if d.direction == "IH"]
    got_enoki = [d.sequence_string for d in strata if d.direction == "Enoki"]
    failures = []
    if strata[0].sequence_string != "(42 2 3 3 2)":
        failures.append(("ambient", strata[0].sequence_string))
    if sorted(got_ih) != sorted(ih):
        failures.append(("IH-ward", got_ih))
    if sorted(got_enoki) != sorted(enoki):
        failures.append(("Enoki-ward", got_enoki))
    verdict(5, "six-curve strata: 3 IH-ward and 11 Enoki-ward labels", failures)


def test_criterion_6_appendix_determinant(verdict):
    failures = []
    ident = identity_by_interpolation()
    if not ident.holds:
        failures.append(("identity", ident.counterexample))
    sweep = first_case_sweep(15, a0=1)
    failures += [("zero", z) for z in sweep.zeros]
    verdict(6, f"closed form = 5x5 expansion; no zero in {sweep.checked} first-case tuples", failures)


def test_criterion_7_integer_formulas(verdict):
    failures = []
    for seed in range(300):
        spec = random_spec(random.Random(seed), n_max=8)
        geo = sequence_and_invariants(spec)
        dims = dimension_formulas(geo)
        n, s = spec.n, geo.sigma_n
        checks = [
            2 * n <= s <= 3 * n,
            geo.l == 3 * n - s,
            dims.h1_log_theta + dims.h1_non_log == dims.h1_theta,
            dims.h1_tf == dims.h1_log_theta,
            dims.det_f == n and dims.tr_f == 2 * n - s,
        ]
        if not all(checks):
            failures.append((seed, checks))
    verdict(7, "integer formulas on 300 generated specs", failures)


def test_criterion_8_non_minimality(verdict):
    failures = []
    for seed in range(20):
        spec = random_spec(random.Random(seed), sigma=True)
        if not all(h_i_membership(spec, i) for i in range(spec.n)):
            failures.append(("minimal", seed))
    for seed in range(20):
        rng = random.Random(100 + seed)
        spec = random_spec(rng, n_max=5, minimal=False)
        b = list(spec.b)
        b[0] = solve_h_i(spec, 0)
        if not h_i_membership(spec.with_params(b=b), 0):
            failures.append(("constructed", seed))
        b[0] = b[0] + E(random_rational(rng, nonzero=True))
        if h_i_membership(spec.with_params(b=b), 0):
            failures.append(("perturbed", seed))
    verdict(8, "H_i membership at b=0 and for a solved b0", failures)


def test_criterion_9_core_algebra(verdict):
    failures = []
    for seed in range(500):
        rng = random.Random(seed)
        order = rng.randint(2, 5)
        f, g, h = (random_germ(rng, order, density=0.4) for _ in range(3))
        kind = seed % 3
        if kind == 0:
            ok = germ_compose(f, germ_compose(g, h)) == germ_compose(germ_compose(f, g), h)
        elif kind == 1:
            u = random_germ(rng, order, invertible=True, density=0.4)
            inv = germ_inverse(u)
            ident = Germ2.identity(order)
            ok = germ_compose(u, inv) == ident and germ_compose(inv, u) == ident
        else:
            m = rng.randint(1, order)
            ok = germ_compose(f, g).truncate(m) == germ_compose(f.truncate(m), g.truncate(m))
        if not ok:
            failures.append((seed, kind))
    verdict(9, "associativity, inverse round trips, truncation monotonicity (500 cases)", failures)
