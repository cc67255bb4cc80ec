"""Unimodular corner matrices and the 5x5 Cramer determinant.

The determinant decides whether the linear part of the tangent-cocycle
equations at a corner can be solved; it is available both as a closed form
and as the expansion of the displayed matrix, and the two are compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import InputError
from .exact import ExactComplex
from .linalg import det_elimination, det_leibniz, matmul

T_FACTOR = ((1, 1), (0, 1))
S_FACTOR = ((0, 1), (1, 1))


@dataclass(frozen=True)
class CornerMatrix:
    p: int
    q: int
    r: int
    s: int

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.p, self.q), (self.r, self.s))


def corner_matrix(factors: Iterable[str]) -> CornerMatrix:
    """Left-to-right product of ``T = [[1,1],[0,1]]`` and ``S = [[0,1],[1,1]]`` tokens."""
    tokens = list(factors)
    if not tokens:
        raise InputError("corner_matrix needs at least one factor")
    m = [[1, 0], [0, 1]]
    for t in tokens:
        key = str(t).upper()
        if key not in ("T", "S"):
            raise InputError(f"unknown factor {t!r}; expected 'T' or 'S'")
        m = matmul(m, T_FACTOR if key == "T" else S_FACTOR)
    return CornerMatrix(m[0][0], m[0][1], m[1][0], m[1][1])


def _field(x):
    return ExactComplex.coerce(x) if isinstance(x, (int, str, Fraction)) else x


def cramer_matrix(p: int, q: int, r: int, s: int, l: int, a0) -> list[list]:
    """Rows for the unknowns ``(a0_10, a^{l-1}_10, A0(a0, 0), B, b0_10)``."""
    a0 = _field(a0)
    zero = ExactComplex(0)
    return [
        [ExactComplex(1), ExactComplex(-1), zero, ExactComplex(-(l - 1)), zero],
        [zero, a0, ExactComplex(-p), -(p + q) * a0, zero],
        [ExactComplex(p), ExactComplex(-1), zero, ExactComplex(p + q), (p + q) * a0],
        [zero, zero, ExactComplex(r), (r + s - 1) * a0, zero],
        [ExactComplex(r), zero, zero, ExactComplex(r + s - 1), (r + s) * a0],
    ]


def cramer_determinant_closed(p: int, q: int, r: int, s: int, l: int, a0):
    """``a0^2 (ps-qr) ((ps-qr) + 1 - (p+s) - r*l)``."""
    a0 = _field(a0)
    d = p * s - q * r
    return a0 * a0 * (d * (d + 1 - (p + s) - r * l))


def cramer_determinant_expanded(p: int, q: int, r: int, s: int, l: int, a0, method: str = "elimination"):
    """Exact determinant of :func:`cramer_matrix` by elimination or by permutation sum."""
    m = cramer_matrix(p, q, r, s, l, a0)
    if method == "leibniz":
        return det_leibniz(m)
    if method != "elimination":
        raise InputError(f"unknown method {method!r}")
    return det_elimination(m)


# The matrix entries are affine in each variable, so the determinant's degree
# in a variable is bounded by the number of rows where it occurs.
VARIABLES = ("p", "q", "r", "s", "l", "a0")


def degree_bounds() -> dict[str, int]:
    """Per-variable degree bound of the expanded determinant, read off the matrix."""
    base = dict(p=2, q=3, r=5, s=7, l=11, a0=13)
    ref = cramer_matrix(**base)
    bounds = {}
    for name in VARIABLES:
        bumped = dict(base)
        bumped[name] = base[name] + 1
        other = cramer_matrix(**bumped)
        bounds[name] = sum(1 for r1, r2 in zip(ref, other) if r1 != r2)
    return bounds


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    points: int
    bounds: dict[str, int]
    counterexample: tuple | None = None


def identity_by_interpolation(offset: int = 0) -> IdentityCheck:
    """Compare closed form and expansion on a tensor grid one point wider than each degree.

    Two polynomials with these degree bounds agreeing on such a grid are
    equal, by uniqueness of multivariate interpolation.
    """
    bounds = degree_bounds()
    axes = [range(offset, offset + bounds[name] + 1) for name in VARIABLES]
    count = 0
    for pt in product(*axes):
        count += 1
        if cramer_determinant_expanded(*pt) != cramer_determinant_closed(*pt):
            return IdentityCheck(False, count, bounds, pt)
    return IdentityCheck(True, count, bounds)


def first_case_tuples(limit: int) -> list[tuple[int, int, int, int]]:
    """``1 <= p <= r``, ``1 <= q <= s``, ``p+q < r+s``, ``ps - qr = +-1``, entries up to ``limit``."""
    out = []
    rng = range(1, limit + 1)
    for p, q, r, s in product(rng, rng, rng, rng):
        if p <= r and q <= s and p + q < r + s and abs(p * s - q * r) == 1:
            out.append((p, q, r, s))
    return out


@dataclass(frozen=True)
class SweepResult:
    checked: int
    zeros: list[tuple]


def first_case_sweep(limit: int = 15, a0=1, expand: bool = True) -> SweepResult:
    """Look for a vanishing determinant under the first-case constraints, ``1 <= l <= limit``."""
    if limit < 1:
        raise InputError("range must be >= 1")
    a0 = _field(a0)
    if not a0:
        raise InputError("a0 must be nonzero")
    zeros = []
    checked = 0
    for (p, q, r, s) in first_case_tuples(limit):
        for l in range(1, limit + 1):
            checked += 1
            value = (cramer_determinant_expanded(p, q, r, s, l, a0) if expand
                     else cramer_determinant_closed(p, q, r, s, l, a0))
            if not value:
                zeros.append((p, q, r, s, l))
    return SweepResult(checked, zeros)


def second_case_table(m_max: int, l_max: int, a0=1) -> dict[tuple[int, int], object]:
    """Expanded determinant for ``(p,q,r,s) = (0,1,1,m)``; no closed form is assumed."""
    return {(m, l): cramer_determinant_expanded(0, 1, 1, m, l, a0)
            for m in range(1, m_max + 1) for l in range(1, l_max + 1)}


@dataclass(frozen=True)
class BaumBott:
    det_f: int
    tr_f: int
    h1_tf_no_vf: int
    h1_tf_with_vf: int

    def to_json(self) -> dict:
        return {
            "detF": self.det_f,
            "trF": self.tr_f,
            "h1TFNoVF": self.h1_tf_no_vf,
            "h1TFWithVF": self.h1_tf_with_vf,
        }


def baum_bott_check(n: int, sigma_n: int) -> BaumBott:
    if n < 1:
        raise InputError("n must be positive")
    if not 2 * n <= sigma_n <= 3 * n:
        raise InputError(f"sigma_n = {sigma_n} outside [{2 * n}, {3 * n}]")
    h1 = 3 * n - sigma_n
    return BaumBott(n, 2 * n - sigma_n, h1, h1 + 1)


def tokens_of(word: str | Sequence[str]) -> list[str]:
    """Split ``"STT"`` into ``["S", "T", "T"]``."""
    return [c for c in word if not c.isspace()]
