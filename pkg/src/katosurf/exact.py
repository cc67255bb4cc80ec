"""Exact scalars: Gaussian rationals and one quadratic extension of them."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InputError

_TERM = re.compile(r"([+-]?)(\d+(?:\.\d+)?(?:/\d+)?)?(\*?i)?")


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {value!r}") from exc
    raise TypeError(f"cannot make a rational from {type(value).__name__}")


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, slots=True)
class ExactComplex:
    """A Gaussian rational ``re + im*i`` with exact arithmetic."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _fraction(self.re))
        object.__setattr__(self, "im", _fraction(self.im))

    @classmethod
    def parse(cls, text: str) -> ExactComplex:
        """Parse strings such as ``"3"``, ``"-1/2+3/4*i"``, ``"i"`` or ``"2*i"``."""
        if not isinstance(text, str):
            raise InputError(f"coefficient must be a string, got {text!r}")
        s = text.replace(" ", "")
        if not s:
            raise InputError("empty coefficient string")
        re_part, im_part = Fraction(0), Fraction(0)
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise InputError(f"bad coefficient {text!r}")
            if pos > 0 and not m.group(1):
                raise InputError(f"bad coefficient {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            mag = _fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                im_part += sign * mag
            else:
                if m.group(2) is None:
                    raise InputError(f"bad coefficient {text!r}")
                re_part += sign * mag
            pos = m.end()
        return cls(re_part, im_part)

    @classmethod
    def coerce(cls, value) -> ExactComplex:
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to ExactComplex")

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self) -> str:
        return f"ExactComplex({str(self)!r})"

    def _other(self, other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Rational)):
            return ExactComplex(Fraction(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def norm2(self) -> Fraction:
        """``|z|**2`` as an exact rational."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def inverse(self) -> ExactComplex:
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("ExactComplex division by zero")
        return ExactComplex(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ExactComplex(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def sqrt(self) -> ExactComplex | None:
        """Exact square root in the Gaussian rationals, or None if there is none."""
        x, y = self.re, self.im
        if y == 0:
            if x >= 0:
                r = rational_sqrt(x)
                return None if r is None else ExactComplex(r)
            r = rational_sqrt(-x)
            return None if r is None else ExactComplex(0, r)
        modulus = rational_sqrt(self.norm2())
        if modulus is None:
            return None
        a = rational_sqrt((modulus + x) / 2)
        b = rational_sqrt((modulus - x) / 2)
        if a is None or b is None:
            return None
        return ExactComplex(a, b if y > 0 else -b)


ZERO = ExactComplex(0)
ONE = ExactComplex(1)
I = ExactComplex(0, 1)


def ec(value) -> ExactComplex:
    """Shorthand constructor accepting ints, Fractions and strings."""
    return ExactComplex.coerce(value)


@dataclass(frozen=True, slots=True)
class QuadraticField:
    """The field K(w) with ``w**2 = d``, K the Gaussian rationals.

    ``d`` must not be a square in K, otherwise the quotient is not a field.
    """

    d: ExactComplex

    def __post_init__(self):
        d = ExactComplex.coerce(self.d)
        object.__setattr__(self, "d", d)
        if d.sqrt() is not None:
            raise InputError(f"{d} is a square; K(sqrt({d})) is not a proper extension")

    def gen(self) -> QuadExt:
        """The adjoined root ``w``."""
        return QuadExt(ZERO, ONE, self.d)

    def __call__(self, x, y=0) -> QuadExt:
        return QuadExt(ExactComplex.coerce(x), ExactComplex.coerce(y), self.d)


@dataclass(frozen=True, slots=True)
class QuadExt:
    """Element ``x + y*w`` of a quadratic extension, with ``w**2 = d``."""

    x: ExactComplex
    y: ExactComplex
    d: ExactComplex

    def _other(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixing elements of different quadratic fields")
            return other
        if isinstance(other, (ExactComplex, int, Rational)):
            return QuadExt(ExactComplex.coerce(other), ZERO, self.d)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.x * o.x + self.d * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.d,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExt(-self.x, -self.y, self.d)

    def inverse(self) -> QuadExt:
        n = self.x * self.x - self.d * self.y * self.y
        if not n:
            raise ZeroDivisionError("QuadExt division by zero")
        ninv = n.inverse()
        return QuadExt(self.x * ninv, -self.y * ninv, self.d)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = QuadExt(ONE, ZERO, self.d), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.x == other.x and self.y == other.y
        if isinstance(other, (ExactComplex, int, Rational)):
            return not self.y and self.x == other
        return NotImplemented

    def __hash__(self):
        if not self.y:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __complex__(self):
        w = complex(self.d) ** 0.5
        return complex(self.x) + complex(self.y) * w

    def __str__(self) -> str:
        if not self.y:
            return str(self.x)
        return f"({self.x})+({self.y})*w"

    def __repr__(self) -> str:
        return f"QuadExt({self}, w^2={self.d})"

    def sqrt(self) -> QuadExt | None:
        """Square root when it is visible without factoring: ``x`` or ``x/d`` a square."""
        if self.y:
            return None
        r = self.x.sqrt()
        if r is not None:
            return QuadExt(r, ZERO, self.d)
        t = (self.x / self.d).sqrt()
        if t is not None:
            return QuadExt(ZERO, t, self.d)
        return None


def to_text(value) -> str:
    """Serialize any supported scalar to its canonical string."""
    return str(value)
