"""Exact linear algebra over any field with Python number protocols."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence


@dataclass
class LinearSolution:
    """Particular solution (free variables set to 0) and the kernel dimension."""

    values: list
    nullity: int
    pivots: list[int]


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None) -> LinearSolution | None:
    """Solve ``rows @ x = rhs`` exactly; return None when inconsistent."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c] if not isinstance(aug[r][c], int) else Fraction(1, aug[r][c])
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][ncols]:
            return None
    zero = 0 * (aug[0][ncols] if aug else 0)
    values = [zero] * ncols
    for i, c in enumerate(pivots):
        values[c] = aug[i][ncols]
    return LinearSolution(values, ncols - len(pivots), pivots)


def det_elimination(matrix: Sequence[Sequence]):
    """Determinant by Gaussian elimination with field division."""
    m = [list(r) for r in matrix]
    n = len(m)
    det = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return 0 * det
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        piv = m[c][c]
        det = det * piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv if not isinstance(piv, int) else Fraction(m[i][c], piv)
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_leibniz(matrix: Sequence[Sequence]):
    """Determinant as the full signed sum over permutations (no division)."""
    n = len(matrix)
    total = 0
    for perm in permutations(range(n)):
        prod = _perm_sign(perm)
        for i, j in enumerate(perm):
            prod = prod * matrix[i][j]
            if not prod:
                break
        total = total + prod
    return total


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), 0) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def leading_minors(matrix: Sequence[Sequence]) -> list:
    return [det_elimination([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def is_negative_definite(matrix: Sequence[Sequence]) -> bool:
    """Sylvester's criterion on a real symmetric matrix: (-1)^k D_k > 0."""
    return all((-1) ** (k + 1) * d > 0 for k, d in enumerate(leading_minors(matrix)))


def lagrange_coefficients(xs: Sequence, ys: Sequence) -> list:
    """Coefficients (constant term first) of the interpolating polynomial."""
    n = len(xs)
    if len(set(map(str, xs))) != n:
        raise ValueError("interpolation nodes must be distinct")
    rows = [[x ** k if k else x * 0 + 1 for k in range(n)] for x in xs]
    sol = solve_linear(rows, list(ys), n)
    if sol is None:  # pragma: no cover - Vandermonde with distinct nodes is invertible
        raise ValueError("singular Vandermonde system")
    coeffs = sol.values
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs
