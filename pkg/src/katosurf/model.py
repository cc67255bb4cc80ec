"""Blow-up step descriptors, the glueing germ sigma, and the surface spec."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from numbers import Rational
from typing import Sequence

from .errors import InputError
from .exact import ExactComplex
from .series import Exp, Germ2, Series2


class Chart(str, Enum):
    """Which chart of the blow-up contains the next blown-up point.

    Unprimed maps ``(u, v) -> (u*v + a, v + b)``, primed maps
    ``(u, v) -> (v + a, u*v + b)``.
    """

    UNPRIMED = "u"
    PRIMED = "uPrime"


class Kind(str, Enum):
    GENERIC = "generic"
    CORNER = "corner"


class NormalizationWarning(UserWarning):
    """sigma does not satisfy the normalization the combinatorics assumes."""


@dataclass(frozen=True)
class BlowupStep:
    """Step ``i`` records the point ``O_i = (a, b)`` on the curve ``C_i``.

    ``kind`` may be left as None and is then inferred from the incidence
    bookkeeping; an explicit tag is validated against it.
    """

    chart: Chart
    a: object = ExactComplex(0)
    b: object = ExactComplex(0)
    kind: Kind | None = None

    def __post_init__(self):
        object.__setattr__(self, "chart", Chart(self.chart))
        if self.kind is not None:
            object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("a", "b"):
            value = getattr(self, name)
            if isinstance(value, (int, str, Rational)):
                object.__setattr__(self, name, ExactComplex.coerce(value))

    @property
    def primed(self) -> bool:
        return self.chart is Chart.PRIMED


@dataclass(frozen=True)
class SigmaGerm:
    """The polynomial glueing germ, stored as exact coefficient maps."""

    s1: dict[Exp, ExactComplex]
    s2: dict[Exp, ExactComplex]

    def __post_init__(self):
        for name in ("s1", "s2"):
            comp = {e: c for e, c in getattr(self, name).items() if c}
            object.__setattr__(self, name, comp)
        if self.s1.get((0, 0)) or self.s2.get((0, 0)):
            raise InputError("sigma must fix the origin")
        if not self.det:
            raise InputError("sigma has a singular linear part")

    @classmethod
    def identity(cls) -> SigmaGerm:
        return cls({(1, 0): ExactComplex(1)}, {(0, 1): ExactComplex(1)})

    @classmethod
    def from_germ(cls, g: Germ2) -> SigmaGerm:
        return cls(dict(g.f1.coeffs), dict(g.f2.coeffs))

    def series(self, order: int) -> tuple[Series2, Series2]:
        return Series2(self.s1, order), Series2(self.s2, order)

    def germ(self, order: int) -> Germ2:
        f1, f2 = self.series(order)
        return Germ2(f1, f2, polynomial=self.degree <= order)

    @property
    def degree(self) -> int:
        return max((j + k for j, k in (*self.s1, *self.s2)), default=1)

    def d(self, comp: int, var: int):
        """``d_var sigma_comp (0)``."""
        src = self.s1 if comp == 1 else self.s2
        return src.get((1, 0) if var == 1 else (0, 1), ExactComplex(0))

    @property
    def det(self):
        return self.d(1, 1) * self.d(2, 2) - self.d(1, 2) * self.d(2, 1)

    @property
    def normalized(self) -> bool:
        """``d1 sigma2 (0) = 0``, the condition the incidence model relies on."""
        return not self.d(2, 1)

    @property
    def fully_normalized(self) -> bool:
        return self.normalized and not self.d(1, 2)

    def to_json(self) -> dict:
        order = self.degree
        return {
            "f1": [[j, k, str(c)] for (j, k), c in Series2(self.s1, order).items()],
            "f2": [[j, k, str(c)] for (j, k), c in Series2(self.s2, order).items()],
            "order": order,
        }


@dataclass(frozen=True)
class KatoSpec:
    """Ordered blow-up steps plus the glueing germ; ``n`` is the number of curves."""

    steps: tuple[BlowupStep, ...]
    sigma: SigmaGerm = field(default_factory=SigmaGerm.identity)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise InputError("a spec needs at least one blow-up step")
        if not self.sigma.normalized:
            warnings.warn(
                "d1 sigma2(0) != 0: curve incidences and the trace formula assume it vanishes",
                NormalizationWarning,
                stacklevel=3,
            )

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def J(self) -> frozenset[int]:
        """Indices whose blown-up point sits in the primed chart."""
        return frozenset(i for i, s in enumerate(self.steps) if s.primed)

    @property
    def a(self) -> tuple:
        return tuple(s.a for s in self.steps)

    @property
    def b(self) -> tuple:
        return tuple(s.b for s in self.steps)

    @property
    def minimal(self) -> bool:
        return not any(self.b)

    def with_params(self, a: Sequence | None = None, b: Sequence | None = None,
                    keep_kinds: bool = False) -> KatoSpec:
        """Copy with new parameter values; kind tags are re-inferred unless kept."""
        steps = []
        for i, s in enumerate(self.steps):
            new = replace(s, a=s.a if a is None else a[i], b=s.b if b is None else b[i])
            if not keep_kinds:
                new = replace(new, kind=None)
            steps.append(new)
        return KatoSpec(tuple(steps), self.sigma)

    def to_json(self) -> dict:
        steps = []
        for s in self.steps:
            item = {"chart": s.chart.value, "a": str(s.a), "b": str(s.b)}
            if s.kind is not None:
                item["kind"] = s.kind.value
            steps.append(item)
        return {"n": self.n, "steps": steps, "sigma": self.sigma.to_json()}

    @classmethod
    def from_json(cls, data) -> KatoSpec:
        if not isinstance(data, dict):
            raise InputError("spec: top level must be a JSON object")
        steps_raw = data.get("steps")
        if not isinstance(steps_raw, list) or not steps_raw:
            raise InputError("spec.steps: expected a nonempty list")
        if "n" in data and data["n"] != len(steps_raw):
            raise InputError(f"spec.n: {data['n']!r} does not match {len(steps_raw)} steps")
        steps = []
        for idx, raw in enumerate(steps_raw):
            where = f"spec.steps[{idx}]"
            if not isinstance(raw, dict):
                raise InputError(f"{where}: expected an object")
            chart = raw.get("chart")
            if chart not in (c.value for c in Chart):
                raise InputError(f"{where}.chart: expected 'u' or 'uPrime', got {chart!r}")
            kind = raw.get("kind")
            if kind is not None and kind not in (k.value for k in Kind):
                raise InputError(f"{where}.kind: expected 'generic' or 'corner', got {kind!r}")
            values = {}
            for key in ("a", "b"):
                try:
                    values[key] = ExactComplex.coerce(str(raw.get(key, "0")))
                except InputError as exc:
                    raise InputError(f"{where}.{key}: {exc}") from exc
            steps.append(BlowupStep(Chart(chart), values["a"], values["b"],
                                    Kind(kind) if kind else None))
        sigma = SigmaGerm.identity()
        if data.get("sigma") is not None:
            try:
                g = Germ2.from_json(data["sigma"], polynomial=True)
                sigma = SigmaGerm.from_germ(g)
            except InputError as exc:
                raise InputError(f"spec.sigma: {exc}") from exc
        return cls(tuple(steps), sigma)

    @classmethod
    def load(cls, path) -> KatoSpec:
        return cls.from_json(load_json(path))


def load_json(path):
    """Read a JSON file, turning decode errors into InputError with the line."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def sigma_from_polys(s1: dict[Exp, object], s2: dict[Exp, object]) -> SigmaGerm:
    """Convenience constructor coercing numeric or string coefficients."""
    def conv(d):
        return {e: ExactComplex.coerce(c) if isinstance(c, (int, str, Rational)) else c
                for e, c in d.items()}

    return SigmaGerm(conv(s1), conv(s2))


def spec_from_charts(charts: str | Sequence[str], a: Sequence = (), b: Sequence = (),
                     sigma: SigmaGerm | None = None) -> KatoSpec:
    """Build a spec from a chart word such as ``"up"`` (u = unprimed, p = primed)."""
    charts = list(charts)
    n = len(charts)
    a = list(a) or [0] * n
    b = list(b) or [0] * n
    if len(a) != n or len(b) != n:
        raise InputError("parameter lists must match the number of charts")
    steps = []
    for ch, ai, bi in zip(charts, a, b):
        if ch not in ("u", "p"):
            raise InputError(f"chart letters are 'u' or 'p', got {ch!r}")
        steps.append(BlowupStep(Chart.PRIMED if ch == "p" else Chart.UNPRIMED, ai, bi))
    return KatoSpec(tuple(steps), sigma or SigmaGerm.identity())
