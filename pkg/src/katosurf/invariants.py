"""Normal-form parameters, the twisting number kappa, and formal conjugacy.

kappa is characterised by a section ``theta = z1^beta z2^alpha A(z)`` with
``A(0) = 1`` solving ``theta(F(z)) = kappa * det(DF(z))^mu * theta(z)``.
Conjugacy ``phi o G = F o phi`` is solved degree by degree over a polynomial
ring of unknowns, branching on univariate nonlinear equations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

from .errors import ConjugacyError, InputError, KappaError
from .exact import ExactComplex, QuadExt, QuadraticField
from .linalg import lagrange_coefficients, solve_linear
from .polyring import Poly
from .series import Germ2, Series2, germ_compose, jacobian_at_zero


# Normal forms ---------------------------------------------------------------


@dataclass(frozen=True)
class FavreForm:
    """``(lam*z1*z2^s + P(z2) + c*z2^(s*k/(k-1)), z2^k)``; ``P`` maps exponents to coefficients."""

    lam: object
    s: int
    k: int
    P: dict[int, object] = field(default_factory=dict)
    c: object | None = None

    def __post_init__(self):
        if self.k < 2 or self.s < 1:
            raise InputError("need k >= 2 and s >= 1")
        if not self.lam:
            raise InputError("lambda must be nonzero")
        object.__setattr__(self, "P", {e: v for e, v in self.P.items() if v})
        if self.c is not None and not self.c:
            object.__setattr__(self, "c", None)
        if self.c is not None and self.c_exponent is None:
            raise InputError("c-term only exists when (k-1) divides s*k")

    @property
    def c_exponent(self) -> int | None:
        q, r = divmod(self.s * self.k, self.k - 1)
        return q if r == 0 else None

    def germ(self, order: int) -> Germ2:
        terms = {(1, self.s): self.lam}
        for e, v in self.P.items():
            terms[(0, e)] = terms.get((0, e), 0) + v
        if self.c is not None:
            e = self.c_exponent
            terms[(0, e)] = terms.get((0, e), 0) + self.c
        return Germ2(Series2(terms, order), Series2({(0, self.k): ExactComplex(1)}, order))

    @property
    def min_mu(self) -> int:
        """Least ``mu`` for which ``alpha = mu*(k-1+s)/(k-1)`` is an integer."""
        return (self.k - 1) // math.gcd(self.k - 1, self.k - 1 + self.s)

    def is_strict(self) -> bool:
        """P only uses exponents ``1..s``."""
        return all(1 <= e <= self.s for e in self.P)


def parse_favre(g: Germ2, strict: bool = False) -> FavreForm:
    """Read ``(lam, s, k, P, c)`` off a germ in normal form.

    ``strict`` rejects P-exponents outside ``1..s``; by default any exponent
    is accepted into P except the c-slot.
    """
    f2 = dict(g.f2.coeffs)
    if len(f2) != 1:
        raise InputError(f"second component is not a single monomial z2^k: {g.f2}")
    (j, k), coeff = next(iter(f2.items()))
    if j != 0 or k < 2 or coeff != 1:
        raise InputError(f"second component must be z2^k with k >= 2, found monomial {(j, k)}")
    lam, s, P = None, None, {}
    for (a, b), v in g.f1.items():
        if a == 1 and lam is None and b >= 1:
            lam, s = v, b
        elif a == 0 and b >= 1:
            P[b] = v
        else:
            raise InputError(f"first component has a non-normal-form monomial z1^{a} z2^{b}")
    if lam is None:
        raise InputError("first component has no z1*z2^s term")
    c = None
    q, r = divmod(s * k, k - 1)
    if r == 0 and q in P:
        c = P.pop(q)
    form = FavreForm(lam, s, k, P, c)
    if strict and not form.is_strict():
        bad = min(e for e in P if not 1 <= e <= s)
        raise InputError(f"P has exponent {bad} outside 1..{s}")
    return form


@dataclass(frozen=True)
class KappaResult:
    kappa: object
    alpha: int
    mu: int
    beta: int = 0
    consistent: bool = True
    checked_degree: int | None = None
    section: Series2 | None = None

    def to_json(self) -> dict:
        out = {
            "kappa": str(self.kappa),
            "alpha": self.alpha,
            "beta": self.beta,
            "mu": self.mu,
            "consistent": self.consistent,
        }
        if self.checked_degree is not None:
            out["checkedDegree"] = self.checked_degree
        return out


def _as_field(x):
    return Fraction(x) if isinstance(x, int) else x


def kappa_from_favre(f: FavreForm, mu: int = 1) -> KappaResult:
    """``kappa = (k*lam)^(-mu)`` with ``alpha*(k-1) = mu*(k-1+s)``."""
    if mu < 1:
        raise InputError("mu must be a positive integer")
    num = mu * (f.k - 1 + f.s)
    if num % (f.k - 1):
        raise KappaError(f"alpha = {num}/{f.k - 1} is not an integer: no such section")
    base = f.lam * f.k
    kappa = 1 / (base ** mu) if not isinstance(base, int) else Fraction(1, base ** mu)
    return KappaResult(kappa, num // (f.k - 1), mu)


def _val(s: Series2) -> int:
    v = s.valuation()
    return s.order + 1 if v < 0 else v


def _pmul(a: Series2, b: Series2) -> Series2:
    """Product keeping every degree that is actually determined by the factors."""
    order = min(a.order + _val(b), b.order + _val(a))
    return Series2(a.coeffs, order) * Series2(b.coeffs, order)


def _ppow(s: Series2, e: int) -> Series2:
    out = Series2.const(ExactComplex(1), s.order + e * _val(s))
    for _ in range(e):
        out = _pmul(out, s)
    return out


def jacobian_determinant(F: Germ2) -> Series2:
    """``det DF``, known to the degree its factors determine."""
    d = lambda s, v: s.derivative(v)
    return _pmul(d(F.f1, 1), d(F.f2, 2)) - _pmul(d(F.f1, 2), d(F.f2, 1))


def _shift(s: Series2, beta: int, alpha: int) -> Series2:
    """Multiply by ``z1^beta z2^alpha`` keeping exact knowledge (order grows)."""
    return Series2({(j + beta, k + alpha): c for (j, k), c in s.coeffs.items()},
                   s.order + beta + alpha)


def _proportional(lhs: dict, rhs: dict):
    """Return ``r`` with ``lhs = r * rhs`` (both nonzero), else None."""
    if set(lhs) != set(rhs) or not rhs:
        return None
    key = min(rhs)
    r = lhs[key] / rhs[key]
    if all(lhs[e] == r * rhs[e] for e in rhs):
        return r
    return None


def _solve_section(F: Germ2, lead: Series2, rhs_base: Series2, kappa, low: int):
    """Solve for ``A`` with ``lead * A(F) = kappa * rhs_base * A``; return (A, consistent, degree)."""
    top = min(lead.order, rhs_base.order)
    n_unknown = top - low
    monos = [(j, d - j) for d in range(1, n_unknown + 1) for j in range(d + 1)]
    cols = []
    for (j, k) in monos:
        left = _pmul(lead, _pmul(_ppow(F.f1, j), _ppow(F.f2, k)))
        right = _shift(rhs_base, j, k) * kappa
        cols.append(left - right)
    const = lead - rhs_base * kappa
    top = min([top] + [c.order for c in cols])
    cols = [c.truncate(top) for c in cols]
    const = const.truncate(top)
    keys = sorted({e for col in cols for e in col.coeffs} | set(const.coeffs))
    rows = [[col.coeff(*e) for col in cols] for e in keys]
    rhs = [-const.coeff(*e) for e in keys]
    if not monos:
        return Series2.const(ExactComplex(1), top), not any(rhs), top
    sol = solve_linear(rows, rhs, len(monos))
    if sol is None:
        return None, False, top
    coeffs = {(0, 0): ExactComplex(1)}
    coeffs.update({m: v for m, v in zip(monos, sol.values)})
    return Series2(coeffs, n_unknown), True, top


def kappa_by_functional_equation(F: Germ2, mu: int = 1, max_alpha: int = 6) -> KappaResult:
    """Find ``(beta, alpha, kappa)`` from the lowest-degree terms, then solve ``A``.

    Candidates are scanned by increasing ``alpha + beta``; the first whose
    higher-order system is consistent wins.  Two consistent candidates with
    different kappa are reported as ambiguous.
    """
    if mu < 1:
        raise InputError("mu must be a positive integer")
    if F.is_shifted():
        raise InputError("kappa needs a germ fixing the origin")
    det = jacobian_determinant(F)
    if det.is_zero():
        raise KappaError("det DF vanishes identically to the known order")
    D = _ppow(det, mu)
    found: list[KappaResult] = []
    inconsistent: list[tuple[int, int]] = []
    for total in range(0, 2 * max_alpha + 1):
        for beta in range(0, min(total, max_alpha) + 1):
            alpha = total - beta
            if alpha > max_alpha:
                continue
            lead = _pmul(_ppow(F.f1, beta), _ppow(F.f2, alpha))
            if lead.is_zero():
                continue
            rhs_base = _shift(D, beta, alpha)
            low = lead.valuation()
            if low != rhs_base.valuation() or low > min(lead.order, rhs_base.order):
                continue
            kappa = _proportional(lead.homogeneous(low), rhs_base.homogeneous(low))
            if kappa is None:
                continue
            section, ok, top = _solve_section(F, lead, rhs_base, kappa, low)
            if not ok:
                inconsistent.append((beta, alpha))
                continue
            found.append(KappaResult(kappa, alpha, mu, beta, True, top, section))
        if found:
            break
    if not found:
        if inconsistent:
            beta, alpha = inconsistent[0]
            raise KappaError(
                f"lowest terms match for beta={beta}, alpha={alpha} but higher orders are inconsistent"
            )
        raise KappaError(f"no section with alpha, beta <= {max_alpha}")
    kappas = {str(r.kappa) for r in found}
    if len(kappas) > 1:
        raise KappaError(f"ambiguous kappa: {sorted(kappas)}")
    return found[0]


@dataclass(frozen=True)
class TwistedFieldResult:
    kappa: object
    k: int
    lambda_tilde: object
    lambda_inverse: object | None
    has_field: bool

    def to_json(self) -> dict:
        return {
            "kappa": str(self.kappa),
            "k": self.k,
            "lambdaTilde": str(self.lambda_tilde),
            "lambdaTildeInverse": None if self.lambda_inverse is None else str(self.lambda_inverse),
            "hasField": self.has_field,
        }


def twisted_vector_field_test(F: Germ2 | FavreForm, mu: int = 1, k: int | None = None,
                              max_alpha: int = 6) -> TwistedFieldResult:
    """``lambda~ = k*kappa``; a global vector field exists iff ``lambda~ = 1``.

    For a plain germ ``k`` is read from a normal form when possible and must
    be passed otherwise.
    """
    if isinstance(F, FavreForm):
        kappa = kappa_from_favre(F, mu).kappa
        k = F.k
    else:
        if k is None:
            try:
                k = parse_favre(F).k
            except InputError as exc:
                raise InputError("k must be given for a germ not in normal form") from exc
        kappa = kappa_by_functional_equation(F, mu, max_alpha).kappa
    lt = kappa * k
    inv = (1 / lt) if lt else None
    return TwistedFieldResult(kappa, k, lt, inv, lt == 1)


def lambda_candidates(kappa, k: int, mu: int = 1) -> list[complex]:
    """Numeric ``lam`` with ``(k*lam)^(-mu) = kappa``, times the (k-1)-th roots of unity."""
    base = complex(kappa) ** (-1.0 / mu) / k
    return [base * cmath.exp(2j * cmath.pi * t / (k - 1)) for t in range(k - 1)]


# Interpolation over parameter samples --------------------------------------


def interpolate(xs: Sequence, ys: Sequence) -> list:
    """Exact interpolating polynomial, constant term first, trailing zeros dropped."""
    return lagrange_coefficients([_as_field(x) for x in xs], [_as_field(y) for y in ys])


def kappa_polynomial(family: Callable[[object], Germ2], samples: Sequence, mu: int = 1,
                     max_alpha: int = 6) -> list:
    """Sample ``kappa`` along a one-parameter family and interpolate exactly."""
    ys = [kappa_by_functional_equation(family(x), mu, max_alpha).kappa for x in samples]
    return interpolate(samples, ys)


def solve_polynomial_equation(coeffs: Sequence) -> list:
    """Roots of ``sum c_i x^i`` in the Gaussian rationals, else in a quadratic extension.

    Only degrees 1 and 2 are handled; a returned QuadExt lives in the field
    generated by the square root of the discriminant.
    """
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    if len(c) == 2:
        return [-ExactComplex.coerce(c[0]) / c[1]]
    if len(c) != 3:
        raise InputError("only linear or quadratic equations are supported")
    c0, c1, c2 = (ExactComplex.coerce(x) if not isinstance(x, ExactComplex) else x for x in c)
    disc = c1 * c1 - 4 * c2 * c0
    r = disc.sqrt()
    if r is not None:
        roots = [(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)]
        return roots if roots[0] != roots[1] else roots[:1]
    K = QuadraticField(disc)
    w = K.gen()
    return [(w - c1) / (c2 * 2), (-w - c1) / (c2 * 2)]


# Conjugacy -----------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyCheck:
    ok: bool
    component: int | None = None
    exponent: tuple[int, int] | None = None
    residual: object = None

    def __bool__(self):
        return self.ok


def verify_conjugacy(F: Germ2, G: Germ2, phi: Germ2, order: int | None = None) -> ConjugacyCheck:
    """Check ``phi o G = F o phi`` coefficientwise up to ``order``."""
    n = min(F.order, G.order, phi.order) if order is None else order
    if not jacobian_at_zero(phi).det:
        raise InputError("phi must be invertible")
    F, G, phi = F.truncate(n), G.truncate(n), phi.truncate(n)
    lhs = germ_compose(phi, G)
    rhs = germ_compose(F, phi)
    for comp, (a, b) in enumerate(((lhs.f1, rhs.f1), (lhs.f2, rhs.f2)), start=1):
        diff = a - b
        for e, v in diff.items():
            return ConjugacyCheck(False, comp, e, v)
    return ConjugacyCheck(True)


def _phi_name(comp: int, j: int, k: int) -> str:
    return f"phi{comp}_{j}_{k}"


def _var_degree(name: str) -> int:
    if name.startswith("phi") and name.count("_") == 2:
        _, j, k = name.split("_")
        return int(j) + int(k)
    return 0


def _diag_linear(name: str) -> bool:
    return name in (_phi_name(1, 1, 0), _phi_name(2, 0, 1))


def _univariate_coeffs(p: Poly, var: str) -> list:
    deg = p.degree_in(var)
    by = p.coefficients_in(var)
    return [by[e].constant() if e in by else ExactComplex(0) for e in range(deg + 1)]


def _scalar_sqrt(x):
    if isinstance(x, (ExactComplex, QuadExt)):
        return x.sqrt()
    if isinstance(x, (int, Rational)):
        return ExactComplex.coerce(x).sqrt()
    return None


def _rational_candidates(coeffs: list) -> list:
    """Rational roots by the rational root theorem, for real rational coefficients."""
    vals = []
    for c in coeffs:
        if isinstance(c, QuadExt):
            if c.y:
                return []
            c = c.x
        c = ExactComplex.coerce(c) if not isinstance(c, ExactComplex) else c
        if c.im:
            return []
        vals.append(c.re)
    den = 1
    for v in vals:
        den = den * v.denominator // __import__("math").gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 == 0 or a0 > 10 ** 6 or an > 10 ** 6:
        return []
    divs = lambda m: [d for d in range(1, m + 1) if m % d == 0]
    out = []
    for p in divs(a0):
        for q in divs(an):
            for sgn in (1, -1):
                out.append(ExactComplex(Fraction(sgn * p, q)))
    return out


def field_roots(coeffs: Sequence) -> list:
    """Roots of ``sum c_i x^i`` found exactly in the coefficient field; nonzero roots first."""
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    roots = []
    has_zero = False
    while len(c) > 1 and not c[0]:
        has_zero = True
        c = c[1:]
    if len(c) == 2:
        roots.append(-c[0] / c[1])
    elif len(c) == 3:
        disc = c[1] * c[1] - 4 * c[2] * c[0]
        r = _scalar_sqrt(disc)
        if r is not None:
            for cand in ((-c[1] + r) / (2 * c[2]), (-c[1] - r) / (2 * c[2])):
                if cand not in roots:
                    roots.append(cand)
    elif len(c) > 3:
        for cand in _rational_candidates(c):
            value = ExactComplex(0)
            for coef in reversed(c):
                value = value * cand + coef
            if not value and cand not in roots:
                roots.append(cand)
    if has_zero:
        roots.append(ExactComplex(0))
    return roots


@dataclass
class ConjugacySolution:
    phi: Germ2
    params: dict[str, object]
    kernel_dims: dict[int, int]
    free_params: list[str]
    branches: int

    def to_json(self) -> dict:
        return {
            "phi": self.phi.to_json(),
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "kernelDims": {str(d): n for d, n in sorted(self.kernel_dims.items())},
            "freeParams": self.free_params,
        }


class _Fail(Exception):
    pass


@dataclass
class _Search:
    eqs_by_degree: dict[int, list[Poly]]
    order: int
    det: Poly
    phi_vars: list[str]
    param_vars: list[str]
    max_branches: int
    branches: int = 0
    best_failure: tuple[int, str] | None = None
    kernel: dict[int, int] | None = None
    free_params: list[str] | None = None
    guessed: bool = False

    def fail(self, degree: int, residual) -> None:
        if self.best_failure is None or degree >= self.best_failure[0]:
            self.best_failure = (degree, str(residual))

    def propagate(self, eqs: list[Poly], subs: dict, degree: int):
        """Eliminate variables appearing linearly with a constant coefficient."""
        while True:
            live = []
            for e in eqs:
                if not e:
                    continue
                if e.is_constant():
                    self.fail(degree, e.constant())
                    raise _Fail
                live.append(e)
            eqs = live
            if self.det.substitute(subs) == 0:
                self.fail(degree, "singular linear part")
                raise _Fail
            pivot = None
            for e in sorted(eqs, key=lambda p: (len(p.terms), str(p))):
                for v in sorted(e.variables(), key=lambda v: (-_var_degree(v), v)):
                    if e.degree_in(v) != 1:
                        continue
                    parts = e.coefficients_in(v)
                    if parts[1].is_constant():
                        rest = parts.get(0, Poly())
                        pivot = (v, -rest / parts[1].constant())
                        break
                if pivot:
                    break
            if pivot is None:
                return eqs, subs
            v, value = pivot
            subs = {k: p.substitute({v: value}) for k, p in subs.items()}
            subs[v] = value
            eqs = [e.substitute({v: value}) for e in eqs]

    def free_vars(self, eqs: list[Poly], subs: dict) -> list[str]:
        names = [v for v in self.phi_vars + self.param_vars if v not in subs]
        return sorted(names, key=lambda v: (v in self.param_vars, _var_degree(v), v))

    def run(self, degree: int, eqs: list[Poly], subs: dict, add: bool):
        self.branches += 1
        if self.branches > self.max_branches:
            raise ConjugacyError(f"branch budget {self.max_branches} exhausted")
        if add and degree <= self.order:
            eqs = eqs + [e.substitute(subs) for e in self.eqs_by_degree.get(degree, [])]
        try:
            eqs, subs = self.propagate(eqs, subs, degree)
        except _Fail:
            return None
        uni = [e for e in eqs if len(e.variables()) == 1]
        for e in sorted(uni, key=lambda p: (p.total_degree(), str(p))):
            (var,) = e.variables()
            roots = field_roots(_univariate_coeffs(e, var))
            if not roots:
                continue
            for r in roots:
                val = Poly.const(r)
                new = {k: p.substitute({var: val}) for k, p in subs.items()}
                new[var] = val
                out = self.run(degree, [q.substitute({var: val}) for q in eqs], new, False)
                if out is not None:
                    return out
            return None
        if degree < self.order:
            return self.run(degree + 1, eqs, subs, True)
        free = self.free_vars(eqs, subs)
        if self.kernel is None:
            kernel: dict[int, int] = {}
            for v in free:
                if v in self.phi_vars:
                    kernel[_var_degree(v)] = kernel.get(_var_degree(v), 0) + 1
            self.kernel = kernel
            self.free_params = [v for v in free if v in self.param_vars]
        if not free:
            if eqs:
                self.fail(degree, eqs[0])
                return None
            return subs
        in_eqs = set().union(*(e.variables() for e in eqs)) if eqs else set()
        untouched = [x for x in free if x not in in_eqs]
        # gauge coefficients no equation mentions before the constrained ones
        v = (untouched or free)[0]
        values = (1, 0) if _diag_linear(v) else (0, 1)
        if v in in_eqs:
            # a constrained coefficient is only tried at a few values, so a
            # failure past this point does not prove inconsistency
            self.guessed = True
            values += (-1, 2)
        for value in values:
            val = Poly.const(ExactComplex(value))
            new = {k: p.substitute({v: val}) for k, p in subs.items()}
            new[v] = val
            out = self.run(degree, [e.substitute({v: val}) for e in eqs], new, False)
            if out is not None:
                return out
        return None


def _lift_germ(g: Germ2, n: int) -> tuple[Series2, Series2]:
    return g.f1.truncate(n), g.f2.truncate(n)


def solve_conjugacy(F: Germ2, G: Germ2, order: int | None = None,
                    linear: Sequence[Sequence] | None = None,
                    max_branches: int = 5000) -> ConjugacySolution:
    """Find a formal ``phi`` with ``phi o G = F o phi`` up to ``order``.

    Coefficients of ``F`` and ``G`` may be Polys in named parameters; those
    parameters are solved for alongside ``phi``.  ``linear`` optionally fixes
    entries of ``phi``'s linear part (None leaves an entry unknown).  Free
    coefficients left at the end are gauged to 0 (1 on the diagonal of the
    linear part) and counted in ``kernel_dims``.
    """
    n = min(F.order, G.order) if order is None else order
    if n < 1:
        raise InputError("order must be >= 1")
    if F.is_shifted() or G.is_shifted():
        raise InputError("conjugacy needs germs fixing the origin")
    phi_vars = []
    comps = []
    for comp in (1, 2):
        coeffs = {}
        for d in range(1, n + 1):
            for j in range(d, -1, -1):
                name = _phi_name(comp, j, d - j)
                phi_vars.append(name)
                coeffs[(j, d - j)] = Poly.var(name)
        comps.append(Series2(coeffs, n))
    fixed: dict[str, Poly] = {}
    if linear is not None:
        names = ((_phi_name(1, 1, 0), _phi_name(1, 0, 1)), (_phi_name(2, 1, 0), _phi_name(2, 0, 1)))
        for r in range(2):
            for c in range(2):
                if linear[r][c] is not None:
                    fixed[names[r][c]] = Poly.const(ExactComplex.coerce(linear[r][c])
                                                    if isinstance(linear[r][c], (int, str, Rational))
                                                    else linear[r][c])
    f1, f2 = _lift_germ(F, n)
    g1, g2 = _lift_germ(G, n)
    p1, p2 = comps
    lhs = (p1.substitute(g1, g2), p2.substitute(g1, g2))
    rhs = (f1.substitute(p1, p2), f2.substitute(p1, p2))
    params = set()
    for s in (f1, f2, g1, g2):
        for c in s.coeffs.values():
            if isinstance(c, Poly):
                params |= c.variables()
    eqs_by_degree: dict[int, list[Poly]] = {}
    for a, b in zip(lhs, rhs):
        diff = a - b
        for (j, k), v in diff.items():
            eqs_by_degree.setdefault(j + k, []).append(Poly.lift(v))
    det = Poly.var(_phi_name(1, 1, 0)) * Poly.var(_phi_name(2, 0, 1)) - \
        Poly.var(_phi_name(1, 0, 1)) * Poly.var(_phi_name(2, 1, 0))
    search = _Search(eqs_by_degree, n, det, phi_vars, sorted(params), max_branches)
    subs = dict(fixed)
    for k in list(subs):
        subs = {kk: (p.substitute({k: subs[k]}) if kk != k else p) for kk, p in subs.items()}
    result = search.run(1, [], subs, True)
    if result is None:
        degree, residual = search.best_failure or (None, None)
        if search.guessed:
            raise ConjugacyError(
                f"no solution found: free linear coefficients tried only at 1, 0, -1, 2 "
                f"(search incomplete; last residual {residual} at degree {degree}); "
                f"pass a linear ansatz", degree=degree, residual=residual,
            )
        raise ConjugacyError(
            f"conjugacy equations inconsistent at degree {degree}: residual {residual}",
            degree=degree, residual=residual,
        )
    values = {k: p.constant() for k, p in result.items()}
    phi1 = Series2({(j, d - j): values.get(_phi_name(1, j, d - j), 0)
                    for d in range(1, n + 1) for j in range(d + 1)}, n)
    phi2 = Series2({(j, d - j): values.get(_phi_name(2, j, d - j), 0)
                    for d in range(1, n + 1) for j in range(d + 1)}, n)
    return ConjugacySolution(
        phi=Germ2(phi1, phi2),
        params={p: values.get(p, ExactComplex(0)) for p in sorted(params)},
        kernel_dims=search.kernel or {},
        free_params=search.free_params or [],
        branches=search.branches,
    )
