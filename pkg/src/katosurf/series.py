"""Truncated bivariate power series and germs of maps of the plane.

A ``Series2`` knows its coefficients for total degree ``<= order``; products
and sums keep the smaller order of their operands.  Coefficients are any exact
field element (ExactComplex, QuadExt) or a ``Poly`` in named unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Rational
from typing import Callable, Iterator

from .errors import InputError, SingularError, TruncationError
from .exact import ExactComplex, QuadExt
from .polyring import Poly

Exp = tuple[int, int]

_SCALARS = (ExactComplex, QuadExt, int, Rational)


class Series2:
    """Truncated series in ``z1, z2`` modulo terms of total degree > order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: dict[Exp, object] | None = None, order: int = 8):
        if order < 0:
            raise InputError(f"series order must be >= 0, got {order}")
        clean = {}
        if coeffs:
            for (j, k), c in coeffs.items():
                if j < 0 or k < 0:
                    raise InputError(f"negative exponent {(j, k)}")
                if j + k <= order and c:
                    clean[(j, k)] = c
        self.order = order
        self.coeffs = clean

    # constructors

    @classmethod
    def zero(cls, order: int) -> Series2:
        return cls({}, order)

    @classmethod
    def const(cls, value, order: int) -> Series2:
        return cls({(0, 0): value}, order)

    @classmethod
    def z1(cls, order: int) -> Series2:
        return cls({(1, 0): ExactComplex(1)}, order)

    @classmethod
    def z2(cls, order: int) -> Series2:
        return cls({(0, 1): ExactComplex(1)}, order)

    @classmethod
    def monomial(cls, j: int, k: int, coeff, order: int) -> Series2:
        return cls({(j, k): coeff}, order)

    # accessors

    def coeff(self, j: int, k: int):
        return self.coeffs.get((j, k), ExactComplex(0))

    def __getitem__(self, exp: Exp):
        return self.coeff(*exp)

    def items(self) -> Iterator[tuple[Exp, object]]:
        """Nonzero terms sorted by (degree, exponent)."""
        for exp in sorted(self.coeffs, key=lambda e: (e[0] + e[1], e)):
            yield exp, self.coeffs[exp]

    def constant(self):
        return self.coeff(0, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Largest total degree with a nonzero coefficient (-1 for zero)."""
        return max((j + k for j, k in self.coeffs), default=-1)

    def valuation(self) -> int:
        """Smallest total degree with a nonzero coefficient (-1 for zero)."""
        return min((j + k for j, k in self.coeffs), default=-1)

    def homogeneous(self, d: int) -> dict[Exp, object]:
        return {e: c for e, c in self.coeffs.items() if e[0] + e[1] == d}

    def truncate(self, order: int) -> Series2:
        if order > self.order:
            raise TruncationError(f"cannot raise order {self.order} to {order}")
        return Series2(self.coeffs, order)

    def map_coeffs(self, fn: Callable) -> Series2:
        return Series2({e: fn(c) for e, c in self.coeffs.items()}, self.order)

    # ring operations

    def _coerce(self, other) -> Series2 | None:
        if isinstance(other, Series2):
            return other
        if isinstance(other, Poly) or _is_scalar(other):
            return Series2.const(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        out = {e: c for e, c in self.coeffs.items() if e[0] + e[1] <= order}
        for e, c in o.coeffs.items():
            if e[0] + e[1] > order:
                continue
            out[e] = out[e] + c if e in out else c
        return Series2(out, order)

    __radd__ = __add__

    def __neg__(self):
        return Series2({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if not isinstance(other, Series2):
            if isinstance(other, Poly) or _is_scalar(other):
                return Series2({e: c * other for e, c in self.coeffs.items()}, self.order)
            return NotImplemented
        order = min(self.order, other.order)
        out: dict = {}
        right = list(other.coeffs.items())
        for (j1, k1), c1 in self.coeffs.items():
            d1 = j1 + k1
            if d1 > order:
                continue
            for (j2, k2), c2 in right:
                if d1 + j2 + k2 > order:
                    continue
                e = (j1 + j2, k1 + k2)
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Series2(out, order)

    def __rmul__(self, other):
        if isinstance(other, Poly) or _is_scalar(other):
            return Series2({e: other * c for e, c in self.coeffs.items()}, self.order)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Series2.const(ExactComplex(1), self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        if self.order != other.order:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def derivative(self, var: int) -> Series2:
        """Partial derivative in z1 (var=1) or z2 (var=2); the order drops by one."""
        if var not in (1, 2):
            raise InputError("var must be 1 or 2")
        out = {}
        for (j, k), c in self.coeffs.items():
            if var == 1 and j:
                out[(j - 1, k)] = c * j
            elif var == 2 and k:
                out[(j, k - 1)] = c * k
        return Series2(out, max(self.order - 1, 0))

    def evaluate(self, z1, z2):
        """Evaluate the truncated polynomial at a point (exact or complex)."""
        total = 0
        for (j, k), c in self.coeffs.items():
            if isinstance(z1, complex) or isinstance(z2, complex):
                c = complex(c)
            total = total + c * (z1 ** j) * (z2 ** k)
        return total

    def substitute(self, g1: Series2, g2: Series2, exact_outer: bool = False) -> Series2:
        """Compose: return ``self(g1, g2)``.

        If ``g1`` or ``g2`` has a constant term the result is only meaningful
        when ``self`` is an exact polynomial (``exact_outer``); otherwise the
        unknown tail of ``self`` would contribute at every degree.
        """
        shifted = bool(g1.constant()) or bool(g2.constant())
        if shifted and not exact_outer:
            raise TruncationError(
                "inner map has a constant term but the outer series is truncated"
            )
        order = min(g1.order, g2.order)
        if not exact_outer:
            order = min(order, self.order)
        g1 = Series2(g1.coeffs, order)
        g2 = Series2(g2.coeffs, order)
        pow1 = [Series2.const(ExactComplex(1), order)]
        pow2 = [Series2.const(ExactComplex(1), order)]
        total = Series2.zero(order)
        by_j: dict[int, list[tuple[int, object]]] = {}
        for (j, k), c in self.coeffs.items():
            if not shifted and j + k > order:
                continue
            by_j.setdefault(j, []).append((k, c))
        for j in sorted(by_j):
            while len(pow1) <= j:
                pow1.append(pow1[-1] * g1)
            inner = Series2.zero(order)
            for k, c in by_j[j]:
                while len(pow2) <= k:
                    pow2.append(pow2[-1] * g2)
                inner = inner + pow2[k] * c
            total = total + pow1[j] * inner
        return total

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [[j, k, str(c)] for (j, k), c in self.items()],
        }

    @classmethod
    def from_terms(cls, terms, order: int) -> Series2:
        """Build from ``[[j, k, "coeff"], ...]`` with string or numeric coefficients."""
        coeffs: dict[Exp, object] = {}
        if not isinstance(terms, list):
            raise InputError("series terms must be a list of [j, k, coeff] triples")
        for idx, item in enumerate(terms):
            if not (isinstance(item, (list, tuple)) and len(item) == 3):
                raise InputError(f"term {idx}: expected [j, k, coeff], got {item!r}")
            j, k, c = item
            if not (isinstance(j, int) and isinstance(k, int)) or j < 0 or k < 0:
                raise InputError(f"term {idx}: exponents must be nonnegative integers")
            try:
                value = ExactComplex.coerce(c)
            except (InputError, TypeError) as exc:
                raise InputError(f"term {idx}: {exc}") from exc
            coeffs[(j, k)] = coeffs.get((j, k), ExactComplex(0)) + value
        return cls(coeffs, order)

    @classmethod
    def from_json(cls, data: dict) -> Series2:
        if not isinstance(data, dict) or "order" not in data or "terms" not in data:
            raise InputError("series JSON needs 'order' and 'terms'")
        return cls.from_terms(data["terms"], _order(data["order"]))

    def __str__(self) -> str:
        if not self.coeffs:
            return f"0 + O({self.order + 1})"
        parts = []
        for (j, k), c in self.items():
            mono = "*".join(
                p for p in (_pw("z1", j), _pw("z2", k)) if p
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) + f" + O({self.order + 1})"

    def __repr__(self) -> str:
        return f"Series2({self})"


def _pw(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _is_scalar(x) -> bool:
    return isinstance(x, _SCALARS)


def _order(value) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise InputError(f"order must be a nonnegative integer, got {value!r}")
    return value


def series_add(a: Series2, b: Series2) -> Series2:
    return a + b


def series_mul(a: Series2, b: Series2) -> Series2:
    return a * b


@dataclass(frozen=True)
class Jacobian:
    """Linear part of a germ at the origin."""

    matrix: tuple[tuple[object, object], tuple[object, object]]
    trace: object
    det: object


@dataclass(frozen=True, eq=False)
class Germ2:
    """A pair of truncated series; a map germ of the plane.

    ``affine`` allows a nonzero constant term.  ``polynomial`` records that
    the components are exact polynomials of degree <= order, so that they may
    be composed with shifted inner maps.
    """

    f1: Series2
    f2: Series2
    affine: bool = False
    polynomial: bool = False
    order: int = field(init=False)

    def __post_init__(self):
        order = min(self.f1.order, self.f2.order)
        object.__setattr__(self, "order", order)
        if self.f1.order != order:
            object.__setattr__(self, "f1", self.f1.truncate(order))
        if self.f2.order != order:
            object.__setattr__(self, "f2", self.f2.truncate(order))
        if not self.affine and (self.f1.constant() or self.f2.constant()):
            raise InputError("germ has a constant term but is not flagged affine")

    @classmethod
    def identity(cls, order: int) -> Germ2:
        return cls(Series2.z1(order), Series2.z2(order), polynomial=True)

    @classmethod
    def linear(cls, matrix, order: int) -> Germ2:
        (a, b), (c, d) = matrix
        f1 = Series2({(1, 0): a, (0, 1): b}, order)
        f2 = Series2({(1, 0): c, (0, 1): d}, order)
        return cls(f1, f2, polynomial=True)

    @property
    def components(self) -> tuple[Series2, Series2]:
        return self.f1, self.f2

    def is_shifted(self) -> bool:
        return bool(self.f1.constant()) or bool(self.f2.constant())

    def truncate(self, order: int) -> Germ2:
        return Germ2(self.f1.truncate(order), self.f2.truncate(order), self.affine, False)

    def map_coeffs(self, fn: Callable) -> Germ2:
        return Germ2(self.f1.map_coeffs(fn), self.f2.map_coeffs(fn), self.affine, self.polynomial)

    def __eq__(self, other):
        if not isinstance(other, Germ2):
            return NotImplemented
        return self.f1 == other.f1 and self.f2 == other.f2

    __hash__ = None

    def __call__(self, z1, z2):
        return self.f1.evaluate(z1, z2), self.f2.evaluate(z1, z2)

    def to_json(self) -> dict:
        out = {
            "f1": [[j, k, str(c)] for (j, k), c in self.f1.items()],
            "f2": [[j, k, str(c)] for (j, k), c in self.f2.items()],
            "order": self.order,
        }
        if self.affine:
            out["affine"] = True
        return out

    @classmethod
    def from_json(cls, data: dict, polynomial: bool = False) -> Germ2:
        if not isinstance(data, dict):
            raise InputError("germ JSON must be an object")
        for key in ("f1", "f2", "order"):
            if key not in data:
                raise InputError(f"germ JSON is missing '{key}'")
        order = _order(data["order"])
        try:
            f1 = Series2.from_terms(data["f1"], order)
        except InputError as exc:
            raise InputError(f"f1: {exc}") from exc
        try:
            f2 = Series2.from_terms(data["f2"], order)
        except InputError as exc:
            raise InputError(f"f2: {exc}") from exc
        return cls(f1, f2, affine=bool(data.get("affine", False)), polynomial=polynomial)

    def __str__(self) -> str:
        return f"({self.f1}, {self.f2})"


def germ_compose(outer: Germ2, inner: Germ2) -> Germ2:
    """Return ``outer o inner`` truncated to the smaller order.

    An inner germ with a constant term may only be fed to an exact polynomial
    outer map; anything else would silently lose terms and is rejected.
    """
    if inner.is_shifted() and not outer.polynomial:
        raise TruncationError(
            "affine-shifted inner germ requires an exact polynomial outer map"
        )
    exact = outer.polynomial
    f1 = outer.f1.substitute(inner.f1, inner.f2, exact_outer=exact)
    f2 = outer.f2.substitute(inner.f1, inner.f2, exact_outer=exact)
    affine = bool(f1.constant()) or bool(f2.constant())
    return Germ2(f1, f2, affine=affine)


def jacobian_at_zero(g: Germ2) -> Jacobian:
    """Degree-one coefficients of ``g`` with their trace and determinant."""
    a, b = g.f1.coeff(1, 0), g.f1.coeff(0, 1)
    c, d = g.f2.coeff(1, 0), g.f2.coeff(0, 1)
    return Jacobian(((a, b), (c, d)), a + d, a * d - b * c)


def germ_inverse(g: Germ2) -> Germ2:
    """Compositional inverse of a germ fixing the origin with invertible linear part."""
    if g.is_shifted():
        raise InputError("germ_inverse needs a germ fixing the origin")
    jac = jacobian_at_zero(g)
    if not jac.det:
        raise SingularError(f"linear part {jac.matrix} is singular (det = 0)")
    (a, b), (c, d) = jac.matrix
    inv_det = 1 / jac.det
    linv = ((d * inv_det, -b * inv_det), (-c * inv_det, a * inv_det))
    n = g.order
    lin = Germ2.linear(jac.matrix, n)
    n1 = g.f1 - lin.f1
    n2 = g.f2 - lin.f2
    # h = L^{-1}(z - N(h)); each pass fixes one more degree
    h = Germ2.linear(linv, n)
    z1, z2 = Series2.z1(n), Series2.z2(n)
    for _ in range(n):
        r1 = z1 - n1.substitute(h.f1, h.f2)
        r2 = z2 - n2.substitute(h.f1, h.f2)
        h = Germ2(
            r1 * linv[0][0] + r2 * linv[0][1],
            r1 * linv[1][0] + r2 * linv[1][1],
        )
    return h


def germ_power_series_eq(a: Germ2, b: Germ2, order: int | None = None) -> bool:
    """Compare two germs up to a common truncation order."""
    m = min(a.order, b.order) if order is None else order
    return a.truncate(m) == b.truncate(m)
