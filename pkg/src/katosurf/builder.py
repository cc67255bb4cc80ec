"""Assemble the contracting germ ``F = Pi_0 o ... o Pi_{n-1} o sigma~`` and read off its trace.

Step ``i`` stores the point ``O_i = (a_i, b_i)`` on ``C_i``.  The chart map
``Pi_i`` (``i >= 1``) uses step ``i``'s chart and the shift ``(a_{i-1}, b_{i-1})``;
``Pi_0`` has no shift and ``sigma~ = sigma + (a_{n-1}, b_{n-1})``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import InputError
from .exact import ExactComplex
from .geometry import build_incidence
from .model import KatoSpec
from .series import Germ2, Series2, jacobian_at_zero


def _apply_chart(primed: bool, u: Series2, v: Series2, a, b) -> tuple[Series2, Series2]:
    uv = u * v
    if primed:
        return v + a, uv + b
    return uv + a, v + b


def build_germ(spec: KatoSpec, order: int = 8) -> Germ2:
    """Exact truncation of ``F`` to total degree ``order``.

    All maps involved are polynomials, so truncating intermediate results is
    exact even though ``sigma~`` has a constant term.
    """
    if order < 2:
        raise InputError(f"order must be >= 2, got {order}")
    build_incidence(spec)
    n = spec.n
    s1, s2 = spec.sigma.series(order)
    u, v = s1 + spec.steps[n - 1].a, s2 + spec.steps[n - 1].b
    for i in range(n - 1, 0, -1):
        prev = spec.steps[i - 1]
        u, v = _apply_chart(spec.steps[i].primed, u, v, prev.a, prev.b)
    u, v = _apply_chart(spec.steps[0].primed, u, v, 0, 0)
    shifted = bool(u.constant()) or bool(v.constant())
    return Germ2(u, v, affine=shifted)


@dataclass(frozen=True)
class TraceMonomial:
    """``tr DF(0)`` as a value and as its factors ``d2 sigma2(0)`` and ``a_j, j in J``."""

    value: object
    factors: tuple[tuple[str, object], ...]

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "factors": [[name, str(v)] for name, v in self.factors],
        }


def trace_monomial(spec: KatoSpec) -> TraceMonomial:
    """``d2 sigma2(0) * prod_{j in J} a_j``; needs ``b = 0`` and ``d1 sigma2(0) = 0``."""
    if not spec.minimal:
        raise InputError("the trace monomial is defined for b = 0 only")
    if not spec.sigma.normalized:
        raise InputError("the trace monomial needs d1 sigma2(0) = 0")
    factors = [("d2sigma2", spec.sigma.d(2, 2))]
    factors += [(f"a{j}", spec.steps[j].a) for j in sorted(spec.J)]
    value = ExactComplex(1)
    for _, f in factors:
        value = value * f
    return TraceMonomial(value, tuple(factors))


def trace_domain_check(spec: KatoSpec) -> bool:
    """``|t| < 1``, compared exactly as ``|t|^2 < 1``."""
    t = trace_monomial(spec).value
    if not isinstance(t, ExactComplex):
        raise InputError("exact domain check needs Gaussian rational parameters")
    return t.norm2() < 1


@dataclass(frozen=True)
class FixedPointResult:
    """Numeric (double precision) fixed point and spectrum of ``DF`` there."""

    fixed_point: tuple[complex, complex]
    eigenvalues: tuple[complex, complex]
    contracting: bool
    converged: bool
    iterations: int
    residual: float

    def to_json(self) -> dict:
        def c(z: complex) -> list[float]:
            return [z.real, z.imag]

        return {
            "numeric": True,
            "fixedPoint": [c(z) for z in self.fixed_point],
            "eigenvalues": [c(z) for z in self.eigenvalues],
            "contracting": self.contracting,
            "converged": self.converged,
            "iterations": self.iterations,
            "residual": self.residual,
        }


def _eigen(tr: complex, det: complex) -> tuple[complex, complex]:
    disc = cmath.sqrt(tr * tr - 4 * det)
    l1, l2 = (tr + disc) / 2, (tr - disc) / 2
    return tuple(sorted((l1, l2), key=lambda z: (abs(z), z.real, z.imag)))


class _NumericMap:
    """Pointwise evaluation of ``F`` and ``DF`` in complex floating point."""

    def __init__(self, spec: KatoSpec):
        self.spec = spec
        order = spec.sigma.degree
        s1, s2 = spec.sigma.series(order)
        self.s = (s1, s2)
        self.ds = ((s1.derivative(1), s1.derivative(2)), (s2.derivative(1), s2.derivative(2)))
        self.a = [complex(x) for x in spec.a]
        self.b = [complex(x) for x in spec.b]

    def __call__(self, z1: complex, z2: complex):
        n = self.spec.n
        u = complex(self.s[0].evaluate(z1, z2)) + self.a[n - 1]
        v = complex(self.s[1].evaluate(z1, z2)) + self.b[n - 1]
        jac = [[complex(self.ds[r][c].evaluate(z1, z2)) for c in range(2)] for r in range(2)]
        for i in range(n - 1, -1, -1):
            sa, sb = (self.a[i - 1], self.b[i - 1]) if i >= 1 else (0j, 0j)
            if self.spec.steps[i].primed:
                u, v, d = v + sa, u * v + sb, ((0, 1), (v, u))
            else:
                u, v, d = u * v + sa, v + sb, ((v, u), (0, 1))
            jac = [[sum(d[r][k] * jac[k][c] for k in range(2)) for c in range(2)] for r in range(2)]
        return (u, v), jac


def fixed_point_analysis(spec: KatoSpec, tolerance: float = 1e-12, max_iter: int = 200) -> FixedPointResult:
    """Damped Newton iteration for ``F(z) = z`` from the origin.

    For ``b = 0`` the origin is fixed and the spectrum comes from the exact
    linear part, converted to floating point only at the end.
    """
    if spec.minimal:
        jac = jacobian_at_zero(build_germ(spec, 2))
        eig = _eigen(complex(jac.trace), complex(jac.det))
        return FixedPointResult((0j, 0j), eig, all(abs(x) < 1 for x in eig), True, 0, 0.0)
    fmap = _NumericMap(spec)
    z = [0j, 0j]

    def residual_at(p):
        (f1, f2), jac = fmap(*p)
        r = (f1 - p[0], f2 - p[1])
        return r, jac, max(abs(r[0]), abs(r[1]))

    r, jac, res = residual_at(z)
    it = 0
    while res >= tolerance and it < max_iter:
        it += 1
        a, b = jac[0][0] - 1, jac[0][1]
        c, d = jac[1][0], jac[1][1] - 1
        det = a * d - b * c
        if det == 0:
            break
        step = ((d * r[0] - b * r[1]) / det, (-c * r[0] + a * r[1]) / det)
        t = 1.0
        while True:
            cand = [z[0] - t * step[0], z[1] - t * step[1]]
            r2, jac2, res2 = residual_at(cand)
            if res2 < res or t < 1e-6:
                break
            t /= 2
        z, r, jac, res = cand, r2, jac2, res2
    tr = jac[0][0] + jac[1][1]
    det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    eig = _eigen(tr, det)
    converged = res < tolerance
    return FixedPointResult(
        (z[0], z[1]), eig, converged and all(abs(x) < 1 for x in eig), converged, it, res
    )
