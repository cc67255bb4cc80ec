"""Multivariate polynomials in named unknowns over an exact field.

Used wherever coefficients are not yet known numbers: conjugacy unknowns,
free parameters such as the ``c`` of a normal form.  Coefficients may be any
field element in this package (ExactComplex, QuadExt, Fraction, int).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from numbers import Rational

from .exact import ExactComplex, QuadExt

Monomial = tuple  # tuple of (name, exponent) pairs sorted by name

_SCALARS = (ExactComplex, QuadExt, int, Rational)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    """Sparse polynomial: a dict from monomials to nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> Poly:
        return cls({((name, 1),): ExactComplex(1)})

    @classmethod
    def const(cls, value) -> Poly:
        if isinstance(value, Poly):
            return value
        return cls({(): value})

    @staticmethod
    def lift(value) -> Poly:
        return value if isinstance(value, Poly) else Poly.const(value)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, (Poly, *_SCALARS)):
            return NotImplemented
        other = Poly.lift(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in out:
                out[mono] = out[mono] + coeff
            else:
                out[mono] = coeff
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Poly, *_SCALARS)):
            return NotImplemented
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        if not isinstance(other, (Poly, *_SCALARS)):
            return NotImplemented
        return Poly.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = c1 * c2
                if m in out:
                    out[m] = out[m] + v
                else:
                    out[m] = v
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            inv = 1 / other if not isinstance(other, int) else Fraction(1, other)
            return self * inv
        if isinstance(other, Poly) and other.is_constant():
            return self / other.constant()
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result, base = Poly.const(ExactComplex(1)), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # predicates and accessors

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash(frozenset(self.terms))

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self):
        """The constant coefficient (0 when absent)."""
        return self.terms.get((), ExactComplex(0))

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def coefficients_in(self, name: str) -> dict[int, Poly]:
        """Write the polynomial as sum of ``coeff_e * name**e``; return {e: coeff_e}."""
        out: dict[int, dict] = {}
        for mono, coeff in self.terms.items():
            d = dict(mono)
            e = d.pop(name, 0)
            rest = tuple(sorted(d.items()))
            out.setdefault(e, {})[rest] = coeff
        return {e: Poly(t) for e, t in out.items()}

    def substitute(self, values: Mapping[str, object]) -> Poly:
        """Replace variables by polynomials or scalars."""
        if not values or not (self.variables() & values.keys()):
            return self
        cache: dict[tuple[str, int], Poly] = {}

        def power(name: str, e: int) -> Poly:
            key = (name, e)
            if key not in cache:
                cache[key] = Poly.lift(values[name]) ** e
            return cache[key]

        acc: dict = {}
        for mono, coeff in self.terms.items():
            kept = []
            factor = None
            for name, e in mono:
                if name in values:
                    p = power(name, e)
                    factor = p if factor is None else factor * p
                else:
                    kept.append((name, e))
            base = Poly({tuple(kept): coeff})
            term = base if factor is None else base * factor
            for m, c in term.terms.items():
                acc[m] = acc[m] + c if m in acc else c
        return Poly(acc)

    def evaluate(self, values: Mapping[str, object]):
        """Substitute scalars for every variable and return the scalar."""
        p = self.substitute(values)
        if not p.is_constant():
            raise ValueError(f"unassigned variables {sorted(p.variables())}")
        return p.constant()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            coeff = self.terms[mono]
            vars_ = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            if not vars_:
                parts.append(f"({coeff})")
            else:
                parts.append(f"({coeff})*{vars_}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def variables_of(items: Iterable[Poly]) -> set[str]:
    out: set[str] = set()
    for p in items:
        out |= p.variables()
    return out
