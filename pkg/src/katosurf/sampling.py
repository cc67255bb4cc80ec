"""Random exact inputs for property checks and sweeps."""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import ExactComplex
from .invariants import FavreForm
from .model import BlowupStep, Chart, KatoSpec, SigmaGerm
from .series import Germ2, Series2


def random_rational(rng: random.Random, bound: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def random_scalar(rng: random.Random, bound: int = 5, gaussian: bool = False,
                  nonzero: bool = False) -> ExactComplex:
    while True:
        im = random_rational(rng, bound) if gaussian else 0
        z = ExactComplex(random_rational(rng, bound), im)
        if z or not nonzero:
            return z


def random_series(rng: random.Random, order: int, density: float = 0.5, bound: int = 4,
                  min_degree: int = 1, gaussian: bool = False) -> Series2:
    coeffs = {}
    for d in range(min_degree, order + 1):
        for j in range(d + 1):
            if rng.random() < density:
                coeffs[(j, d - j)] = random_scalar(rng, bound, gaussian)
    return Series2(coeffs, order)


def random_germ(rng: random.Random, order: int, invertible: bool = False, **kw) -> Germ2:
    """Germ fixing 0; with ``invertible`` the linear part has nonzero determinant."""
    while True:
        f1 = random_series(rng, order, **kw)
        f2 = random_series(rng, order, **kw)
        g = Germ2(f1, f2)
        if not invertible:
            return g
        if f1.coeff(1, 0) * f2.coeff(0, 1) - f1.coeff(0, 1) * f2.coeff(1, 0):
            return g


def random_sigma(rng: random.Random, degree: int = 2, bound: int = 3) -> SigmaGerm:
    """Polynomial sigma with ``d1 sigma2(0) = 0`` and invertible linear part."""
    s1 = {(1, 0): random_scalar(rng, bound, nonzero=True), (0, 1): random_scalar(rng, bound)}
    s2 = {(0, 1): random_scalar(rng, bound, nonzero=True)}
    for d in range(2, degree + 1):
        for j in range(d + 1):
            if rng.random() < 0.3:
                s1[(j, d - j)] = random_scalar(rng, bound)
            if rng.random() < 0.3:
                s2[(j, d - j)] = random_scalar(rng, bound)
    return SigmaGerm(s1, s2)


def random_spec(rng: random.Random, n_max: int = 6, minimal: bool = True,
                zero_rate: float = 0.4, sigma: bool = False, gaussian: bool = False) -> KatoSpec:
    """Random chart word and parameters; some ``a_j`` are forced to 0 to create corners."""
    n = rng.randint(1, n_max)
    steps = []
    for _ in range(n):
        chart = Chart.PRIMED if rng.random() < 0.5 else Chart.UNPRIMED
        a = ExactComplex(0) if rng.random() < zero_rate else random_scalar(rng, 3, gaussian, True)
        b = ExactComplex(0) if minimal else random_scalar(rng, 3, gaussian)
        steps.append(BlowupStep(chart, a, b))
    if not any(s.primed for s in steps):
        steps[0] = BlowupStep(Chart.PRIMED, steps[0].a, steps[0].b)
    return KatoSpec(tuple(steps), random_sigma(rng) if sigma else SigmaGerm.identity())


def random_favre(rng: random.Random, s_max: int = 3, k_max: int = 4) -> FavreForm:
    """Normal form whose P has a nonzero term of exponent at most ``s``.

    Without such a term the germ is monomial and several sections coexist.
    """
    s = rng.randint(1, s_max)
    k = rng.randint(2, k_max)
    lam = random_scalar(rng, 4, nonzero=True)
    P = {e: random_scalar(rng, 3) for e in range(1, s + 1) if rng.random() < 0.6}
    lead = rng.randint(1, s)
    P[lead] = random_scalar(rng, 3, nonzero=True)
    P = {e: v for e, v in P.items() if v}
    q, r = divmod(s * k, k - 1)
    c = random_scalar(rng, 3) if r == 0 and rng.random() < 0.5 else None
    if c is not None and q in P:
        c = None
    return FavreForm(lam, s, k, P, c)
