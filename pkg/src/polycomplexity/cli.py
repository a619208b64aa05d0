"""Command-line front end: single reports, parameter sweeps as CSV/JSON, and
the validation suites.

Exit codes: 0 success, 1 validation failure, 2 usage/parameter error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from . import validation
from .complexity import ComplexityReport, report
from .errors import IntegrationError, ParameterDomainError
from .measures import DEFAULT_TOL
from .orthopoly import PolynomialFamily, RakhmanovDensity, hermite, jacobi, laguerre

CSV_HEADER = (
    "family,n,alpha,beta,variance,fisher,shannon_entropy,w2,n1,c_cr,c_fs,c_lmc,method_flags"
)

_METHOD_CODES = {"closed-form": "c", "numeric": "n", "asymptotic": "a"}
_FLAG_KEYS = (
    ("variance", "V"),
    ("fisher", "F"),
    ("shannon_entropy", "S"),
    ("w2", "W2"),
    ("n1", "N1"),
    ("c_cr", "CCR"),
    ("c_fs", "CFS"),
    ("c_lmc", "CLMC"),
)


def _family_from(kind: str, alpha, beta) -> PolynomialFamily:
    if kind == "hermite":
        return hermite()
    if kind == "laguerre":
        if alpha is None:
            raise ParameterDomainError("laguerre requires --alpha")
        return laguerre(alpha)
    if kind == "jacobi":
        if alpha is None or beta is None:
            raise ParameterDomainError("jacobi requires --alpha and --beta")
        return jacobi(alpha, beta)
    raise ParameterDomainError(f"unknown family {kind!r}")


def _fmt(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.17g}"


def _json_value(value: float):
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _report_doc(rep: ComplexityReport) -> dict:
    fam = rep.family
    doc = {
        "family": fam.kind,
        "degree": rep.degree,
        "alpha": fam.alpha,
        "beta": fam.beta,
    }
    for name, mv in rep.entries().items():
        if mv is None:
            doc[name] = None
        else:
            doc[name] = {"value": _json_value(mv.value), "method": mv.method}
            if mv.condition_flag:
                doc[name]["ill_conditioned"] = True
    if rep.failures:
        doc["errors"] = dict(sorted(rep.failures.items()))
    return doc


def _method_flags(rep: ComplexityReport) -> str:
    parts = []
    for attr, short in _FLAG_KEYS:
        mv = getattr(rep, attr)
        if mv is None:
            parts.append(f"{short}=-")
        else:
            code = _METHOD_CODES.get(mv.method, "?")
            parts.append(f"{short}={code}{'!' if mv.condition_flag else ''}")
    return ";".join(parts)


def _row_values(rep: ComplexityReport) -> list[float]:
    out = []
    for attr, _ in _FLAG_KEYS:
        mv = getattr(rep, attr)
        out.append(math.nan if mv is None else mv.value)
    return out


def _sweep_point(args) -> tuple[dict, bool]:
    kind, n, alpha, beta, tol = args
    fam = _family_from(kind, alpha, beta)
    rep = report(RakhmanovDensity(fam, n), tol=tol)
    row = {
        "family": kind,
        "n": n,
        "alpha": fam.alpha,
        "beta": fam.beta,
        "values": _row_values(rep),
        "method_flags": _method_flags(rep),
    }
    failed = any(
        name in rep.failures for name, _ in _FLAG_KEYS
    )
    return row, failed


def _format_csv_rows(rows) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        cells = [
            row["family"],
            str(row["n"]),
            _fmt(row["alpha"]) if row["alpha"] is not None else "",
            _fmt(row["beta"]) if row["beta"] is not None else "",
        ]
        cells += [_fmt(v) for v in row["values"]]
        cells.append(row["method_flags"])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _format_json_rows(rows) -> str:
    docs = []
    for row in rows:
        doc = {
            "family": row["family"],
            "n": row["n"],
            "alpha": row["alpha"],
            "beta": row["beta"],
        }
        for (name, _), v in zip(_FLAG_KEYS, row["values"]):
            doc[name] = _json_value(v)
        doc["method_flags"] = row["method_flags"]
        docs.append(doc)
    return json.dumps(docs, indent=2) + "\n"


def _write_output(text: str, out_path: str | None):
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _alpha_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0.0:
        raise ParameterDomainError("--alpha-step must be positive")
    out = []
    i = 0
    while True:
        v = start + i * step
        if v > stop + 1e-12:
            break
        out.append(round(v, 12))
        i += 1
    if not out:
        raise ParameterDomainError("empty alpha range")
    return out


def cmd_compute(args) -> int:
    fam = _family_from(args.family, args.alpha, args.beta)
    rep = report(RakhmanovDensity(fam, args.n), tol=args.tolerance)
    doc = _report_doc(rep)
    _write_output(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.vary == "degree":
        degrees = list(range(args.n_max + 1))
        points = [(args.family, n, args.alpha, args.beta, args.tolerance) for n in degrees]
    else:
        if args.family == "hermite":
            raise ParameterDomainError("hermite has no alpha parameter to sweep")
        start = args.alpha_start
        stop = args.alpha_stop
        if start is None:
            start = -0.49 if args.measures == "lmc" else 1.1
        if stop is None:
            stop = 10.0
        alphas = _alpha_grid(start, stop, args.alpha_step)
        points = [(args.family, args.n, a, args.beta, args.tolerance) for a in alphas]

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_point, points))
    else:
        results = [_sweep_point(p) for p in points]
    rows = [r for r, _ in results]
    n_failed = sum(1 for _, failed in results if failed)
    text = _format_csv_rows(rows) if args.format == "csv" else _format_json_rows(rows)
    _write_output(text, args.out)
    if n_failed:
        print(f"sweep: {n_failed} of {len(rows)} points had failed entries (nan)", file=sys.stderr)
        return 3
    return 0


def cmd_validate(args) -> int:
    results = validation.run_suite(args.suite, n_max=args.n_max, coarse=args.grid == "coarse")
    for res in results:
        print(res.line())
    n_fail = sum(1 for r in results if not r.passed)
    print(f"validate: {len(results) - n_fail}/{len(results)} checks passed")
    return 0 if n_fail == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycomplexity",
        description="Spreading and complexity measures of classical orthogonal polynomial densities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOL,
                       help="adaptive quadrature tolerance (default 1e-9)")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("compute", help="single complexity report as JSON")
    p.add_argument("--family", required=True, choices=("hermite", "laguerre", "jacobi"))
    p.add_argument("--n", required=True, type=int, help="polynomial degree")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    add_common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="parameter sweep as CSV or JSON rows")
    p.add_argument("--family", required=True, choices=("hermite", "laguerre", "jacobi"))
    p.add_argument("--vary", required=True, choices=("degree", "alpha"))
    p.add_argument("--n", type=int, default=2, help="fixed degree for alpha sweeps")
    p.add_argument("--n-max", type=int, default=40, help="largest degree for degree sweeps")
    p.add_argument("--alpha", type=float, default=None, help="fixed alpha for degree sweeps")
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--alpha-start", type=float, default=None)
    p.add_argument("--alpha-stop", type=float, default=None)
    p.add_argument("--alpha-step", type=float, default=0.1)
    p.add_argument("--measures", choices=("all", "fisher", "lmc"), default="all",
                   help="pick the default alpha range per measure validity")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run invariant suites")
    p.add_argument("--suite", required=True,
                   choices=("closed-vs-numeric", "representations", "asymptotics", "all"))
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--grid", choices=("full", "coarse"), default="full")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterDomainError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except IntegrationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
