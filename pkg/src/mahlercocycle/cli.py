"""Command-line front end.

Every subcommand prints either ``key: value`` lines or one JSON document
(``--format json``; ``search`` emits JSON lines).  Exit status is 0 on
success, 1 for malformed input and 2 when a numerical routine fails.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import verify
from .block2d import (
    NAMED_BLOCKS,
    fourier_matrix_2d,
    has_coincidence,
    is_primitive as block_is_primitive,
    parse_blocks,
    qr_polynomial_2d,
)
from .cocycle import DEFAULT_SEED, BASES, CocycleParams, lyapunov_max, lyapunov_min, lyapunov_pair
from .construct import borwein_search, enumerate_substitutions
from .mahler import LaurentPoly, mahler_jensen, mahler_multivariate, mahler_quadrature, parse_laurent
from .polynomial import classify, format_poly, parse_poly
from .substitution import (
    BinarySubstitution,
    SubstitutionError,
    borwein_polynomial,
    fourier_matrix,
    is_primitive,
    parse_substitution,
    periodic_class,
    qr_polynomial,
    substitution_matrix,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2

# worked examples that can be named instead of typed
NAMED_POLYS = {
    "lehmer": verify.LEHMER,
    "littlewood": verify.LITTLEWOOD_Q,
    "newman14": verify.NEWMAN_14,
}
NAMED_SUBSTITUTIONS = {
    "tm": "01,10",
    "pd": "01,00",
    "littlewood": "11010,00101",
    "lehmer": "00111111000,11100000011",
}


def _poly(text: str):
    return NAMED_POLYS.get(text.strip().lower()) or parse_poly(text)


def _subst(text: str) -> BinarySubstitution:
    return parse_substitution(NAMED_SUBSTITUTIONS.get(text.strip().lower(), text))


def _num(x: float | None) -> float | None:
    # json has no infinities; -inf becomes null
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def _params(args) -> CocycleParams:
    return CocycleParams(n_iter=args.iters, n_samples=args.samples, seed=args.seed, basis=args.basis)


def _emit(args, payload: dict[str, Any]) -> None:
    if args.format == "json":
        print(json.dumps(payload))
        return
    for key, value in payload.items():
        if isinstance(value, float):
            value = f"{value:.10g}"
        elif isinstance(value, list):
            value = " ".join(str(v) for v in value)
        print(f"{key}: {value}")


def cmd_mahler(args) -> int:
    p = _poly(args.poly)
    if args.method == "quadrature":
        res = mahler_quadrature(p, args.grid or 1 << 16)
    else:
        res = mahler_jensen(p)
    cls = classify(p)
    _emit(args, {
        "poly": format_poly(p),
        "degree": p.degree,
        "mahler": res.value,
        "method": res.method.value,
        "est_error": res.est_error,
        "height": cls.height,
        "borwein": cls.is_borwein,
        "littlewood": cls.is_littlewood,
        "newman": cls.is_newman,
        "reciprocal": cls.is_reciprocal,
    })
    return EXIT_OK


def cmd_mahler2d(args) -> int:
    p = parse_laurent(args.poly)
    res = mahler_multivariate(p, outer_grid=args.grid or 4096)
    _emit(args, {
        "poly": p.to_text(),
        "variables": p.dim,
        "mahler": res.value,
        "method": res.method.value,
        "est_error": res.est_error,
    })
    return EXIT_OK


def _analysis(s: BinarySubstitution) -> dict[str, Any]:
    qr = qr_polynomial(s)
    primitive = is_primitive(s)
    out: dict[str, Any] = {
        "subst": s.to_text(),
        "length": s.length,
        "matrix": substitution_matrix(s).tolist(),
        "primitive": primitive,
        "bijective": s.is_bijective,
        "periodic": periodic_class(s).value if primitive else None,
        "qr": format_poly(qr),
        "borwein": None if qr.is_zero else format_poly(borwein_polynomial(s)),
    }
    # equal words: Q-R vanishes and both exponents are 0
    out["mahler"] = 0.0 if qr.is_zero else mahler_jensen(qr).value
    return out


def cmd_subst_analyze(args) -> int:
    _emit(args, _analysis(_subst(args.subst)))
    return EXIT_OK


def cmd_lyapunov(args) -> int:
    s = _subst(args.subst)
    F = fourier_matrix(s)
    params = _params(args)
    if args.method == "sum-rule":
        top, bottom = lyapunov_pair(F, params)
    else:
        top, bottom = lyapunov_max(F, params), lyapunov_min(F, params, method=args.method)
    qr = qr_polynomial(s)
    _emit(args, {
        "subst": s.to_text(),
        "chi_max": _num(top.mean),
        "chi_max_stderr": top.stderr,
        "chi_min": _num(bottom.mean),
        "chi_min_stderr": bottom.stderr,
        "mahler_qr": 0.0 if qr.is_zero else mahler_jensen(qr).value,
        "iters": params.n_iter,
        "samples": params.n_samples,
        "seed": params.seed,
        "basis": params.basis,
    })
    return EXIT_OK


def cmd_from_poly(args) -> int:
    p = _poly(args.poly)
    subs = enumerate_substitutions(p, require_primitive=args.primitive_only)
    rows = [{"subst": s.to_text(), "qr": format_poly(qr_polynomial(s)), "primitive": is_primitive(s)} for s in subs]
    if args.format == "json":
        print(json.dumps({"poly": format_poly(p), "count": len(rows), "substitutions": rows}))
    else:
        print(f"poly: {format_poly(p)}")
        print(f"count: {len(rows)}")
        for r in rows:
            flag = "primitive" if r["primitive"] else "not primitive"
            print(f"{r['subst']}  qr={r['qr']}  {flag}")
    return EXIT_OK


def cmd_search(args) -> int:
    records = borwein_search(args.max_degree, positive_floor=args.floor, workers=args.workers)
    if args.limit is not None:
        records = records[: args.limit]
    for r in records:
        if args.format == "json":
            print(r.to_json())
        else:
            print(f"{r.measure:.12f}  deg {r.degree:2d}  {format_poly(r.poly)}")
    return EXIT_OK


def _laurent_from_grid(grid: np.ndarray) -> LaurentPoly:
    return LaurentPoly({tuple(int(i) for i in idx): int(v) for idx, v in np.ndenumerate(grid) if v})


def cmd_block2d(args) -> int:
    b = parse_blocks(args.blocks)
    F = fourier_matrix_2d(b)
    qr = qr_polynomial_2d(b)
    det = _laurent_from_grid(F.determinant_grid)
    top, bottom = lyapunov_pair(F, _params(args))
    grid = args.grid or 4096
    _emit(args, {
        "blocks": b.to_text(),
        "shape": list(b.shape),
        "primitive": block_is_primitive(b),
        "coincidence": has_coincidence(b),
        "qr": qr.to_text(),
        "mahler_qr": 0.0 if qr.is_zero else mahler_multivariate(qr, outer_grid=grid).value,
        "det": det.to_text(),
        "mahler_det": None if det.is_zero else mahler_multivariate(det, outer_grid=grid).value,
        "chi_max": _num(top.mean),
        "chi_max_stderr": top.stderr,
        "chi_min": _num(bottom.mean),
        "chi_min_stderr": bottom.stderr,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    echo = None if args.format == "json" else print
    results = verify.run_all(quick=args.quick, numbers=set(args.only) if args.only else None, echo=echo)
    if args.format == "json":
        print(json.dumps([
            {"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail, "seconds": r.seconds}
            for r in results
        ]))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    cocycle = argparse.ArgumentParser(add_help=False)
    cocycle.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"default {DEFAULT_SEED}")
    cocycle.add_argument("--iters", type=int, default=CocycleParams.n_iter)
    cocycle.add_argument("--samples", type=int, default=CocycleParams.n_samples)
    cocycle.add_argument("--basis", choices=BASES, default="triangular")

    parser = argparse.ArgumentParser(
        prog="mahlercocycle",
        description="Mahler measures of height-one polynomials and Lyapunov exponents of binary substitution cocycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mahler", parents=[common], help="logarithmic Mahler measure of one polynomial")
    p.add_argument("--poly", required=True, help=f"'1,1,0,-1', '1+z-z^3' or one of {sorted(NAMED_POLYS)}")
    p.add_argument("--method", choices=("jensen", "quadrature"), default="jensen")
    p.add_argument("--grid", type=int, help="quadrature points (default 65536)")
    p.set_defaults(func=cmd_mahler)

    p = sub.add_parser("mahler2d", parents=[common], help="Mahler measure in two or three variables")
    p.add_argument("--poly", required=True, help="e.g. '1+x+y' or '1+y^2-x*y'")
    p.add_argument("--grid", type=int, help="outer grid points (default 4096)")
    p.set_defaults(func=cmd_mahler2d)

    p = sub.add_parser("subst", help="substitution utilities")
    ssub = p.add_subparsers(dest="action", required=True)
    a = ssub.add_parser("analyze", parents=[common], help="primitivity, periodicity and Q-R")
    a.add_argument("--subst", required=True, help=f"'w0,w1' or one of {sorted(NAMED_SUBSTITUTIONS)}")
    a.set_defaults(func=cmd_subst_analyze)

    p = sub.add_parser("lyapunov", parents=[common, cocycle], help="extremal exponents by cocycle sampling")
    p.add_argument("--subst", required=True)
    p.add_argument("--method", choices=("sum-rule", "inverse-norm"), default="sum-rule",
                   help="route for the bottom exponent")
    p.set_defaults(func=cmd_lyapunov)

    p = sub.add_parser("from-poly", parents=[common], help="all substitutions realising a height-one polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--primitive-only", action="store_true")
    p.set_defaults(func=cmd_from_poly)

    p = sub.add_parser("search", parents=[common], help="exhaustive Borwein polynomial search")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--floor", type=float, default=1e-6, help="drop measures at or below this")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--limit", type=int, help="print only the first N records")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("block2d", parents=[common, cocycle], help="two-dimensional block substitution")
    p.add_argument("blocks", help=f"'ba/ab;ab/ba' (top row first) or one of {sorted(NAMED_BLOCKS)}")
    p.add_argument("--grid", type=int, help="outer grid points for the bivariate measures (default 4096)")
    p.set_defaults(func=cmd_block2d)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction table")
    p.add_argument("--quick", action="store_true", help="smaller sweeps")
    p.add_argument("--only", type=int, nargs="+", metavar="N", help="run only these rows")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (ValueError, KeyError, SubstitutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())
