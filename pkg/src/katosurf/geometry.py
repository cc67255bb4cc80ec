"""Curve bookkeeping through the blow-up tower.

Curves and blown-up points are indexed on the universal cover: curve ``j``
and ``j + n`` are translates.  ``On(j)`` is the set of curves through the
point ``O_j`` blown up at step ``j``.  From it come the classes of the curves
in the basis ``e_0..e_{n-1}`` (``e_i.e_j = -delta_ij``), the intersection
matrix, the self-intersection sequence and everything derived from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, SingularError
from .linalg import solve_linear
from .model import KatoSpec, Kind


@dataclass(frozen=True)
class IncidenceTable:
    """``On(j)`` for ``j`` in ``0..2n-1``; other indices follow by periodicity."""

    n: int
    on: tuple[frozenset[int], ...]

    def at(self, j: int) -> frozenset[int]:
        q, r = divmod(j, self.n)
        return frozenset(x + q * self.n for x in self.on[r])

    def kinds(self) -> tuple[Kind, ...]:
        return tuple(Kind.CORNER if len(self.on[j]) == 2 else Kind.GENERIC for j in range(self.n))

    def is_periodic(self) -> bool:
        n = self.n
        return all(self.on[j + n] == frozenset(x + n for x in self.on[j]) for j in range(n))


def _upper_curve(spec: KatoSpec, j: int) -> int | None:
    """Curve through the origin of the unprimed chart at step ``j``, if any.

    Walking back, a point at a nonzero position ends the chain; a primed step
    puts its previous curve there; an unprimed origin step passes the question on.
    """
    n = spec.n
    cur = j
    for _ in range(n):
        p = cur - 1
        step = spec.steps[p % n]
        if step.a:
            return None
        if step.primed:
            return p - 1
        cur = p
    return None


def _on(spec: KatoSpec, j: int) -> frozenset[int]:
    step = spec.steps[j % spec.n]
    if step.a:
        return frozenset({j})
    if step.primed:
        return frozenset({j, j - 1})
    up = _upper_curve(spec, j)
    return frozenset({j}) if up is None else frozenset({j, up})


def build_incidence(spec: KatoSpec) -> IncidenceTable:
    """Compute ``On(j)`` over two periods and validate explicit kind tags."""
    n = spec.n
    on = tuple(_on(spec, j) for j in range(2 * n))
    table = IncidenceTable(n, on)
    if not table.is_periodic():  # pragma: no cover - structural invariant
        raise AssertionError("incidence table is not periodic")
    for j, (step, kind) in enumerate(zip(spec.steps, table.kinds())):
        if step.kind is not None and step.kind is not kind:
            curves = sorted(on[j])
            if step.kind is Kind.CORNER:
                raise InputError(
                    f"step {j}: corner requested but only curve(s) {curves} pass through O_{j}"
                )
            raise InputError(
                f"step {j}: generic requested but O_{j} is the corner of curves {curves}"
            )
    return table


def step_kinds(spec: KatoSpec) -> tuple[Kind, ...]:
    return build_incidence(spec).kinds()


def _hits(incidence: IncidenceTable, i: int) -> list[int]:
    """Indices ``j >= i`` of blown-up points lying on curve ``i``."""
    n = incidence.n
    return [j for j in range(i, i + 3 * n + 2) if i in incidence.at(j)]


def donaldson_classes(incidence: IncidenceTable) -> list[tuple[int, ...]]:
    """``[D_i] = e_i - sum e_{j+1}`` over blown-up points ``O_j`` on curve ``i``, reduced mod n."""
    n = incidence.n
    classes = []
    for i in range(n):
        vec = [0] * n
        vec[i] += 1
        for j in _hits(incidence, i):
            vec[(j + 1) % n] -= 1
        classes.append(tuple(vec))
    return classes


def intersection_matrix(classes: Sequence[Sequence[int]]) -> list[list[int]]:
    """Gram matrix under ``e_i.e_j = -delta_ij``."""
    return [[-sum(x * y for x, y in zip(ci, cj)) for cj in classes] for ci in classes]


def self_intersection_sequence(incidence: IncidenceTable) -> tuple[int, ...]:
    """``a_i = -C_i^2`` on the universal cover: one plus the points blown up on ``C_i``."""
    return tuple(1 + len(_hits(incidence, i)) for i in range(incidence.n))


@dataclass(frozen=True)
class Token:
    """A block of the sequence: singular ``s_p`` or regular ``r_m``."""

    kind: str  # "s" or "r"
    size: int  # p for s_p, m for r_m
    indices: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.kind}{self.size}"


def decompose_sequence(seq: Sequence[int]) -> list[Token]:
    """Split a cyclic sequence into ``s_p = (p+2, 2, .., 2)`` and runs of 2s.

    Tokens are ordered by their cyclic starting index.
    """
    n = len(seq)
    if any(x < 2 for x in seq):
        raise InputError(f"sequence entries must be >= 2: {tuple(seq)}")
    owner: list[int | None] = [None] * n
    tokens: list[Token] = []
    for h in range(n):
        if seq[h] <= 2:
            continue
        p = seq[h] - 2
        idx = [h]
        for t in range(1, p):
            k = (h + t) % n
            if seq[k] != 2 or owner[k] is not None or k == h:
                raise InputError(f"sequence {tuple(seq)} does not split into s_p/r_m blocks")
            idx.append(k)
        for k in idx:
            owner[k] = len(tokens)
        tokens.append(Token("s", p, tuple(idx)))
    free = [k for k in range(n) if owner[k] is None]
    if len(free) == n:
        return [Token("r", n, tuple(range(n)))]
    for k in free:
        if owner[k] is None and owner[(k - 1) % n] is not None:
            run = [k]
            nxt = (k + 1) % n
            while owner[nxt] is None:
                run.append(nxt)
                nxt = (nxt + 1) % n
            for x in run:
                owner[x] = -1
            tokens.append(Token("r", len(run), tuple(run)))
    tokens.sort(key=lambda t: t.indices[0])
    return tokens


def sequence_string(seq: Sequence[int], tokens: Sequence[Token] | None = None) -> str:
    """Print from index 0, digits of one block run together, blocks separated by spaces.

    A block wrapping past the end shows up both at the start and at the end.
    """
    if tokens is None:
        tokens = decompose_sequence(seq)
    owner = {}
    for t_id, tok in enumerate(tokens):
        for pos, k in enumerate(tok.indices):
            owner[k] = (t_id, pos)
    groups: list[str] = []
    prev = None
    for k, x in enumerate(seq):
        t_id, pos = owner[k]
        if groups and prev == (t_id, pos - 1):
            groups[-1] += str(x)
        else:
            groups.append(str(x))
        prev = (t_id, pos)
    return "(" + " ".join(groups) + ")"


def decomposition_string(tokens: Sequence[Token]) -> str:
    return "".join(t.label for t in tokens)


def canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest rotation starting at an entry > 2 (if any)."""
    n = len(seq)
    rots = [tuple(seq[i:]) + tuple(seq[:i]) for i in range(n)]
    heads = [r for r in rots if r[0] > 2]
    return min(heads or rots)


def same_cycle(s1: Sequence[int], s2: Sequence[int]) -> bool:
    return len(s1) == len(s2) and canonical_rotation(s1) == canonical_rotation(s2)


TYPE_ENOKI = "Enoki"
TYPE_INTERMEDIATE = "Intermediate"
TYPE_IH = "InoueHirzebruch"


@dataclass(frozen=True)
class CurveGeometry:
    n: int
    classes: tuple[tuple[int, ...], ...]
    matrix: tuple[tuple[int, ...], ...]
    sequence: tuple[int, ...]
    sigma_n: int
    tokens: tuple[Token, ...]
    rho: int
    l: int
    type_tag: str

    @property
    def sequence_string(self) -> str:
        return sequence_string(self.sequence, self.tokens)

    @property
    def decomposition(self) -> str:
        return decomposition_string(self.tokens)

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "intersectionMatrix": [list(r) for r in self.matrix],
            "sequence": list(self.sequence),
            "sequenceString": self.sequence_string,
            "decomposition": self.decomposition,
            "sigmaN": self.sigma_n,
            "rho": self.rho,
            "l": self.l,
            "type": self.type_tag,
        }


def type_of(n: int, sigma_n: int) -> str:
    if sigma_n == 2 * n:
        return TYPE_ENOKI
    if sigma_n == 3 * n:
        return TYPE_IH
    return TYPE_INTERMEDIATE


def sequence_and_invariants(spec: KatoSpec) -> CurveGeometry:
    inc = build_incidence(spec)
    classes = donaldson_classes(inc)
    matrix = intersection_matrix(classes)
    seq = self_intersection_sequence(inc)
    tokens = decompose_sequence(seq)
    sigma_n = sum(seq)
    l = sum(1 for k in inc.kinds() if k is Kind.GENERIC)
    return CurveGeometry(
        n=spec.n,
        classes=tuple(classes),
        matrix=tuple(tuple(r) for r in matrix),
        sequence=seq,
        sigma_n=sigma_n,
        tokens=tuple(tokens),
        rho=sum(1 for t in tokens if t.kind == "r"),
        l=l,
        type_tag=type_of(spec.n, sigma_n),
    )


@dataclass(frozen=True)
class AnticanonicalIndex:
    """Rational solution ``d`` of ``M d = (D_i^2 + 2)_i`` and the least ``mu`` making it integral."""

    d: tuple[Fraction, ...]
    mu: int


def anticanonical_index(matrix: Sequence[Sequence[int]], sequence: Sequence[int] | None = None) -> AnticanonicalIndex:
    """Solve the adjunction system exactly.

    The right-hand side uses the self-intersections on the surface (the
    diagonal of ``matrix``); ``sequence`` is accepted for reporting symmetry
    but not needed.
    """
    n = len(matrix)
    rows = [[Fraction(x) for x in r] for r in matrix]
    rhs = [Fraction(matrix[i][i] + 2) for i in range(n)]
    sol = solve_linear(rows, rhs, n)
    if sol is None or sol.nullity:
        raise SingularError("no numerically anticanonical solution: intersection matrix is singular")
    mu = 1
    for v in sol.values:
        mu = mu * v.denominator // math.gcd(mu, v.denominator)
    return AnticanonicalIndex(tuple(sol.values), mu)


@dataclass(frozen=True)
class DimensionTable:
    h1_theta: int
    h1_log_theta: int
    h1_non_log: int
    h1_tf: int
    det_f: int
    tr_f: int

    def to_json(self) -> dict:
        return {
            "h1Theta": self.h1_theta,
            "h1LogTheta": self.h1_log_theta,
            "h1NonLog": self.h1_non_log,
            "h1TF": self.h1_tf,
            "detF": self.det_f,
            "trF": self.tr_f,
        }


def dimension_formulas(result: CurveGeometry, h0_theta: int = 0) -> DimensionTable:
    if h0_theta not in (0, 1):
        raise InputError("h0_theta must be 0 or 1")
    n, s = result.n, result.sigma_n
    return DimensionTable(
        h1_theta=2 * n + h0_theta,
        h1_log_theta=3 * n - s + h0_theta,
        h1_non_log=s - n,
        h1_tf=3 * n - s + h0_theta,
        det_f=n,
        tr_f=2 * n - s,
    )
