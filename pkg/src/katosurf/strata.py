"""Strata of the parameter space by vanishing patterns, and the non-minimality test.

A pattern assigns each parameter slot ``a_j`` one of Zero, NonZero or Free.
Free means the value does not affect the curve configuration (an unprimed
step whose chart origin carries no other curve).  Zero slots that are
generic in the reference spec move towards Inoue-Hirzebruch surfaces;
corner slots made NonZero move towards Enoki surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from itertools import combinations, product
from typing import Sequence

from .builder import trace_domain_check
from .errors import InputError
from .exact import ExactComplex
from .geometry import _upper_curve, build_incidence, sequence_and_invariants
from .model import Kind, KatoSpec

OUTSIDE = "outside-B_J"


class Slot(str, Enum):
    ZERO = "0"
    NONZERO = "*"
    FREE = "C"


@dataclass(frozen=True)
class StratumDescriptor:
    pattern: tuple[Slot, ...]
    codim: int
    sequence: tuple[int, ...]
    sequence_string: str
    type_tag: str
    sigma_n: int
    l: int
    direction: str = "ambient"  # "ambient", "IH", "Enoki" or "point"
    outside: bool = False

    @property
    def pattern_string(self) -> str:
        return "".join(s.value for s in self.pattern)

    def to_json(self) -> dict:
        out = {
            "pattern": self.pattern_string,
            "codim": self.codim,
            "sequence": self.sequence_string,
            "type": self.type_tag,
            "sigmaN": self.sigma_n,
            "direction": self.direction,
        }
        if self.outside:
            out["stratum"] = OUTSIDE
        return out


def _pattern(spec: KatoSpec) -> tuple[Slot, ...]:
    slots = []
    for j, step in enumerate(spec.steps):
        if not step.primed and _upper_curve(spec, j) is None:
            slots.append(Slot.FREE)
        else:
            slots.append(Slot.NONZERO if step.a else Slot.ZERO)
    return tuple(slots)


def _descriptor(spec: KatoSpec, reference_generic: Sequence[int], direction: str) -> StratumDescriptor:
    geo = sequence_and_invariants(spec)
    pattern = _pattern(spec)
    codim = sum(1 for j in reference_generic if pattern[j] is Slot.ZERO)
    return StratumDescriptor(
        pattern=pattern,
        codim=codim,
        sequence=geo.sequence,
        sequence_string=geo.sequence_string,
        type_tag=geo.type_tag,
        sigma_n=geo.sigma_n,
        l=geo.l,
        direction=direction,
    )


def _blocks(kinds: Sequence[Kind]) -> list[list[int]]:
    """Cyclic maximal runs of generic steps (each followed by a corner run)."""
    n = len(kinds)
    if all(k is Kind.GENERIC for k in kinds):
        return [list(range(n))]
    if all(k is Kind.CORNER for k in kinds):
        return []
    runs = []
    for start in range(n):
        if kinds[start] is Kind.GENERIC and kinds[start - 1] is Kind.CORNER:
            run = [start]
            k = (start + 1) % n
            while kinds[k] is Kind.GENERIC:
                run.append(k)
                k = (k + 1) % n
            runs.append(run)
    return runs


def enumerate_strata(spec: KatoSpec) -> list[StratumDescriptor]:
    """Reference stratum first, then IH-ward strata, then Enoki-ward strata.

    IH-ward: in each generic run, zero a leading segment of the parameters;
    only patterns that raise the sigma_n sum are kept.  Enoki-ward: make
    every nonempty subset of the corner parameters nonzero; patterns that
    coincide after normalization are listed once.
    """
    inc = build_incidence(spec)
    kinds = inc.kinds()
    generic = [j for j, k in enumerate(kinds) if k is Kind.GENERIC]
    corners = [j for j, k in enumerate(kinds) if k is Kind.CORNER]
    base = _descriptor(spec, generic, "ambient")
    out = [base]
    seen = {base.pattern}

    blocks = _blocks(kinds)
    for counts in product(*(range(len(b) + 1) for b in blocks)):
        if not any(counts):
            continue
        a = list(spec.a)
        for block, c in zip(blocks, counts):
            for j in block[:c]:
                a[j] = ExactComplex(0)
        desc = _descriptor(spec.with_params(a), generic, "IH")
        if desc.sigma_n > base.sigma_n and desc.pattern not in seen:
            seen.add(desc.pattern)
            out.append(desc)

    for size in range(1, len(corners) + 1):
        for subset in combinations(corners, size):
            a = list(spec.a)
            for j in subset:
                a[j] = ExactComplex(1)
            desc = _descriptor(spec.with_params(a), generic, "Enoki")
            if desc.sigma_n < base.sigma_n and desc.pattern not in seen:
                seen.add(desc.pattern)
                out.append(desc)
    return out


def stratum_of_point(spec: KatoSpec) -> StratumDescriptor:
    """Classify concrete parameters; flags points with ``|t| >= 1``."""
    inc = build_incidence(spec)
    generic = [j for j, k in enumerate(inc.kinds()) if k is Kind.GENERIC]
    desc = _descriptor(spec, generic, "point")
    outside = False
    if spec.minimal and spec.sigma.normalized and all(isinstance(x, ExactComplex) for x in spec.a):
        outside = not trace_domain_check(spec)
    return replace(desc, outside=outside)


def _h_chain(spec: KatoSpec, i: int):
    """Image of ``O_{i-1}`` under ``Pi_{i+1} o .. o Pi_{n-1} o sigma~ o Pi_0 o .. o Pi_{i-1}``."""
    n = spec.n
    if not 0 <= i < n:
        raise InputError(f"curve index {i} out of range 0..{n - 1}")
    steps = spec.steps

    def chart(k: int, u, v):
        sa, sb = (steps[k - 1].a, steps[k - 1].b) if k >= 1 else (0, 0)
        if steps[k].primed:
            return v + sa, u * v + sb
        return u * v + sa, v + sb

    if i == 0:
        u, v = ExactComplex(0), ExactComplex(0)
    else:
        u, v = steps[i - 1].a, steps[i - 1].b
        for k in range(i - 1, -1, -1):
            u, v = chart(k, u, v)
    order = spec.sigma.degree
    s1, s2 = spec.sigma.series(order)
    u, v = s1.evaluate(u, v) + steps[n - 1].a, s2.evaluate(u, v) + steps[n - 1].b
    for k in range(n - 1, i, -1):
        u, v = chart(k, u, v)
    return u, v


def h_i_membership(spec: KatoSpec, i: int) -> bool:
    """True when the composed chart maps send ``O_{i-1}`` onto ``C_i = {v_i = 0}``.

    Purely algebraic: whether the point lies in the domain of the charts is
    not checked.
    """
    _, v = _h_chain(spec, i)
    return not v


def solve_h_i(spec: KatoSpec, i: int):
    """The value of ``b_i`` putting the other parameters on the hypersurface ``H_i``.

    The condition reads ``b_i + P = 0`` with ``P`` free of ``b_i``.
    """
    b = list(spec.b)
    b[i] = ExactComplex(0)
    _, v = _h_chain(spec.with_params(b=b, keep_kinds=True), i)
    return -v
