"""``kato`` command line: build, analyze, strata, kappa, conjugate, detcheck, sweep.

Structured output is JSON with sorted keys; sweeps write CSV.  Exit codes
are 0 on success, 1 for a mathematical failure and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from .appendix import first_case_sweep, identity_by_interpolation
from .builder import build_germ, fixed_point_analysis, trace_domain_check, trace_monomial
from .errors import ConjugacyError, InputError, KatoError, MathError
from .exact import ExactComplex, QuadraticField
from .geometry import TYPE_INTERMEDIATE, anticanonical_index, dimension_formulas, sequence_and_invariants
from .invariants import (
    kappa_by_functional_equation,
    lambda_candidates,
    parse_favre,
    solve_conjugacy,
    verify_conjugacy,
)
from .model import KatoSpec, load_json
from .polyring import Poly
from .series import Germ2, Series2, jacobian_at_zero
from .strata import OUTSIDE, enumerate_strata, stratum_of_point

DEFAULT_ORDER = 8


def default_order() -> int:
    raw = os.environ.get("KATO_DEFAULT_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"KATO_DEFAULT_ORDER must be an integer, got {raw!r}") from None
    return value


def dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# Germ files ----------------------------------------------------------------

_SYMBOLIC = re.compile(r"^\s*(?:(?P<num>[^*]+)\*)?(?P<name>[A-Za-z_][A-Za-z_0-9]*)\s*$")


def parse_coefficient(text, generator=None):
    """A number, a parameter name, or ``number*name``; ``w`` is the extension generator."""
    if not isinstance(text, str):
        return ExactComplex.coerce(text)
    try:
        return ExactComplex.parse(text)
    except InputError:
        pass
    m = _SYMBOLIC.match(text)
    if not m or m.group("name") == "i":
        raise InputError(f"cannot parse coefficient {text!r}")
    name = m.group("name")
    if name == "w":
        if generator is None:
            raise InputError("coefficient uses 'w' but no --extension was given")
        base = generator
    else:
        base = Poly.var(name)
    return base * ExactComplex.parse(m.group("num")) if m.group("num") else base


def germ_from_data(data, generator=None) -> Germ2:
    """A germ JSON object, or a spec (anything with 'steps') built to its stated order."""
    if isinstance(data, dict) and "steps" in data:
        spec = KatoSpec.from_json(data)
        return build_germ(spec, int(data.get("order", default_order())))
    if not isinstance(data, dict):
        raise InputError("germ JSON must be an object")
    for key in ("f1", "f2", "order"):
        if key not in data:
            raise InputError(f"germ JSON is missing '{key}'")
    order = data["order"]
    if not isinstance(order, int) or order < 1:
        raise InputError(f"germ order must be a positive integer, got {order!r}")
    comps = []
    for key in ("f1", "f2"):
        coeffs = {}
        for idx, item in enumerate(data[key]):
            if not (isinstance(item, list) and len(item) == 3):
                raise InputError(f"{key}[{idx}]: expected [j, k, coeff]")
            j, k, c = item
            try:
                value = parse_coefficient(c, generator)
            except InputError as exc:
                raise InputError(f"{key}[{idx}]: {exc}") from exc
            coeffs[(j, k)] = coeffs[(j, k)] + value if (j, k) in coeffs else value
        comps.append(Series2(coeffs, order))
    return Germ2(comps[0], comps[1], affine=bool(data.get("affine", False)))


def load_germ(path: str, generator=None) -> Germ2:
    return germ_from_data(load_json(path), generator)


# Reports -------------------------------------------------------------------


def _kappa_block(germ: Germ2, mu: int, k: int | None) -> dict:
    res = kappa_by_functional_equation(germ, mu)
    block = res.to_json()
    if k is None:
        try:
            k = parse_favre(germ).k
        except InputError:
            k = None
    if k is not None:
        lt = res.kappa * k
        block["k"] = k
        block["lambdaTilde"] = str(lt)
        block["lambdaTildeInverse"] = str(1 / lt) if lt else None
        block["hasVectorField"] = lt == 1
        block["lambdaCandidatesNumeric"] = [
            [round(z.real, 12), round(z.imag, 12)] for z in lambda_candidates(res.kappa, k, mu)
        ]
    return block


def analyze_spec(spec: KatoSpec, order: int, mu: int | None = None, k: int | None = None) -> dict:
    report: dict = {"spec": spec.to_json(), "warnings": []}
    germ = build_germ(spec, order)
    report["germ"] = germ.to_json()
    if not spec.sigma.normalized:
        report["warnings"].append("d1 sigma2(0) != 0: incidences and trace assume it vanishes")
    if spec.minimal:
        if spec.sigma.normalized:
            report["trace"] = trace_monomial(spec).to_json()
            if all(isinstance(x, ExactComplex) for x in spec.a):
                report["traceDomainOk"] = trace_domain_check(spec)
        jac = jacobian_at_zero(germ)
        report["jacobian"] = {"trace": str(jac.trace), "det": str(jac.det)}
    else:
        report["fixedPoint"] = fixed_point_analysis(spec).to_json()
        report["warnings"].append("b != 0: the origin is not fixed; fixed point found numerically")
    geo = sequence_and_invariants(spec)
    report["curveGeometry"] = geo.to_json()
    try:
        idx = anticanonical_index(geo.matrix)
        report["anticanonical"] = {"d": [str(x) for x in idx.d], "mu": idx.mu}
        index_mu = idx.mu
    except MathError as exc:
        report["warnings"].append(f"anticanonical index: {exc}")
        index_mu = None
    report["dimensions"] = dimension_formulas(geo).to_json()
    report["stratum"] = stratum_of_point(spec).to_json()
    use_mu = mu if mu is not None else index_mu
    if geo.type_tag == TYPE_INTERMEDIATE and spec.minimal and use_mu:
        try:
            report["invariants"] = _kappa_block(germ, use_mu, k)
        except MathError as exc:
            report["warnings"].append(f"kappa: {exc}")
    return report


def _read_spec(path: str) -> KatoSpec:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        spec = KatoSpec.load(path)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return spec


def _order(args) -> int:
    order = args.order if args.order is not None else default_order()
    if order < 2:
        raise InputError(f"order must be >= 2, got {order}")
    return order


def cmd_build(args) -> int:
    germ = build_germ(_read_spec(args.spec), _order(args))
    emit(dump(germ.to_json()), args.out)
    return 0


def cmd_analyze(args) -> int:
    if args.germ:
        germ = load_germ(args.germ)
        report = {"germ": germ.to_json()}
        jac = jacobian_at_zero(germ)
        report["jacobian"] = {"trace": str(jac.trace), "det": str(jac.det)}
        report["invariants"] = _kappa_block(germ, args.mu or 1, args.k)
    else:
        if not args.spec:
            raise InputError("analyze needs --spec or --germ")
        report = analyze_spec(_read_spec(args.spec), _order(args), args.mu, args.k)
    emit(dump(report), args.out)
    return 0


def _point_spec(spec: KatoSpec, path: str) -> KatoSpec:
    """Replace parameters by those in a point file ``{"a": [...], "b": [...]}``."""
    data = load_json(path)
    if not isinstance(data, dict) or not set(data) <= {"a", "b"}:
        raise InputError(f"{path}: expected an object with keys 'a' and/or 'b'")
    values = {}
    for key in ("a", "b"):
        if key in data:
            raw = data[key]
            if not isinstance(raw, list) or len(raw) != spec.n:
                raise InputError(f"{path}: '{key}' must list {spec.n} values")
            try:
                values[key] = [ExactComplex.coerce(str(x)) for x in raw]
            except InputError as exc:
                raise InputError(f"{path}.{key}: {exc}") from exc
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return spec.with_params(values.get("a"), values.get("b"))


def cmd_strata(args) -> int:
    spec = _read_spec(args.spec)
    if args.point:
        emit(dump({"point": stratum_of_point(_point_spec(spec, args.point)).to_json()}), args.out)
    else:
        emit(dump({"strata": [d.to_json() for d in enumerate_strata(spec)]}), args.out)
    return 0


def cmd_kappa(args) -> int:
    if args.germ:
        germ = load_germ(args.germ)
    elif args.spec:
        germ = build_germ(_read_spec(args.spec), _order(args))
    else:
        raise InputError("kappa needs --spec or --germ")
    emit(dump(_kappa_block(germ, args.mu, args.k)), args.out)
    return 0


def parse_linear(text: str, generator=None) -> list[list]:
    """``"a,b;c,d"`` row by row; ``?`` leaves an entry unknown."""
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise InputError(f"--linear expects 'a,b;c,d', got {text!r}")
    return [[None if x.strip() == "?" else parse_coefficient(x.strip(), generator) for x in r]
            for r in rows]


def cmd_conjugate(args) -> int:
    gen = QuadraticField(ExactComplex.parse(args.extension)).gen() if args.extension else None
    F = load_germ(args.f, gen)
    G = load_germ(args.g, gen)
    order = args.order if args.order is not None else min(F.order, G.order)
    if args.phi:
        phi = load_germ(args.phi, gen)
        check = verify_conjugacy(F, G, phi, order)
        out = {"conjugate": check.ok}
        if not check.ok:
            out["mismatch"] = {"component": check.component, "exponent": list(check.exponent),
                               "residual": str(check.residual)}
        emit(dump(out), args.out)
        return 0 if check.ok else 1
    linear = parse_linear(args.linear, gen) if args.linear else None
    try:
        sol = solve_conjugacy(F, G, order, linear=linear)
    except ConjugacyError as exc:
        emit(dump({"conjugate": False, "degree": exc.degree, "residual": str(exc.residual),
                   "message": str(exc)}), args.out)
        return 1
    emit(dump({"conjugate": True, "order": order, **sol.to_json()}), args.out)
    return 0


def cmd_detcheck(args) -> int:
    sweep = first_case_sweep(args.range)
    ident = identity_by_interpolation()
    out = {
        "checked": sweep.checked,
        "zeros": [list(z) for z in sweep.zeros],
        "identity": {"holds": ident.holds, "points": ident.points, "degreeBounds": ident.bounds},
    }
    emit(dump(out), args.out)
    return 0 if ident.holds and not sweep.zeros else 1


# Sweeps --------------------------------------------------------------------

SWEEP_COLUMNS = ["index", "point", "trace", "stratum", "sequence", "type", "kappa", "error"]
_PARAM = re.compile(r"^([ab])(\d+)$")


def _parse_values(text: str) -> list[ExactComplex]:
    text = text.strip()
    if not text:
        return []
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return [ExactComplex(x) for x in range(lo, hi + 1)]
    return [ExactComplex.parse(v) for v in text.split(",")]


def parse_grid(items: list[str], n: int) -> tuple[list[str], list[tuple]]:
    """``a1=1,2,3`` or ``a1=1..5``, repeated; the cartesian product in the given order."""
    names, axes = [], []
    for item in items or []:
        if "=" not in item:
            raise InputError(f"grid entry {item!r}: expected name=values")
        name, values = item.split("=", 1)
        name = name.strip()
        m = _PARAM.match(name)
        if not m or int(m.group(2)) >= n:
            raise InputError(f"grid entry {item!r}: parameter must be a0..a{n - 1} or b0..b{n - 1}")
        if name in names:
            raise InputError(f"grid entry {item!r}: {name} given twice")
        names.append(name)
        axes.append(_parse_values(values))
    points = list(product(*axes)) if names else []
    return names, points


def sweep_row(task) -> dict:
    index, spec_json, names, point, order, mu = task
    row = dict.fromkeys(SWEEP_COLUMNS, "")
    row["index"] = index
    row["point"] = " ".join(f"{n}={v}" for n, v in zip(names, point))
    try:
        spec = KatoSpec.from_json(spec_json)
        a, b = list(spec.a), list(spec.b)
        for name, value in zip(names, point):
            (a if name[0] == "a" else b)[int(name[1:])] = value
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            spec = spec.with_params(a, b)
        if spec.minimal:
            row["trace"] = str(trace_monomial(spec).value)
        desc = stratum_of_point(spec)
        row["stratum"] = OUTSIDE if desc.outside else desc.pattern_string
        row["sequence"] = desc.sequence_string
        row["type"] = desc.type_tag
        if desc.type_tag == TYPE_INTERMEDIATE and spec.minimal:
            row["kappa"] = str(kappa_by_functional_equation(build_germ(spec, order), mu).kappa)
    except KatoError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(spec_json: dict, names: list[str], points: list[tuple], order: int, mu: int,
              jobs: int = 1) -> str:
    tasks = [(i, spec_json, names, p, order, mu) for i, p in enumerate(points)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(sweep_row, tasks))
    else:
        rows = [sweep_row(t) for t in tasks]
    rows.sort(key=lambda r: r["index"])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_sweep(args) -> int:
    data = load_json(args.spec)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = KatoSpec.from_json(data)
    names, points = parse_grid(args.grid, spec.n)
    if args.jobs < 1:
        raise InputError("--jobs must be >= 1")
    emit(run_sweep(data, names, points, _order(args), args.mu, args.jobs), args.out)
    return 0


# Entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kato", description="Exact computations for Kato surface germs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("build", cmd_build, "build the truncated germ F of a spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--order", type=int)

    p = add("analyze", cmd_analyze, "full report for a spec (or a raw germ)")
    p.add_argument("--spec")
    p.add_argument("--germ")
    p.add_argument("--order", type=int)
    p.add_argument("--mu", type=int, help="index for kappa (default: computed)")
    p.add_argument("--k", type=int, help="degree k of the normal form, for lambda~")

    p = add("strata", cmd_strata, "enumerate IH-ward and Enoki-ward strata")
    p.add_argument("--spec", required=True)
    p.add_argument("--point", help="classify the parameters in this file instead")

    p = add("kappa", cmd_kappa, "kappa from the functional equation")
    p.add_argument("--spec")
    p.add_argument("--germ")
    p.add_argument("--order", type=int)
    p.add_argument("--mu", type=int, default=1)
    p.add_argument("--k", type=int)

    p = add("conjugate", cmd_conjugate, "solve or verify phi o G = F o phi")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--phi", help="verify this phi instead of solving")
    p.add_argument("--order", type=int)
    p.add_argument("--extension", help="d with w^2 = d; coefficients may then use w")
    p.add_argument("--linear", help="linear part ansatz 'a,b;c,d', '?' for unknown entries")

    p = add("detcheck", cmd_detcheck, "nonvanishing sweep of the Cramer determinant")
    p.add_argument("--range", type=int, default=15)

    p = add("sweep", cmd_sweep, "parameter grid sweep to CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--grid", action="append", default=[], help="e.g. a1=1..5 or a0=0,1/2")
    p.add_argument("--order", type=int)
    p.add_argument("--mu", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "mu", None) is not None and args.mu < 1:
        print("error: --mu must be a positive integer", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except MathError as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
