"""Command-line interface: ``qopuc <command> [options]``.

The complex parameter is passed as ``--b-re`` and ``--b-im`` with
``b = b_re + i b_im``. Written as ``b = lam - i eta`` this means
``eta = -b_im``; the sign of ``eta`` fixes the sign of ``c_k``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import chainseq, opuc, quadlab
from .cpoly import roots
from .exceptions import QOPUCError
from .families import r_poly
from .validation import check_family, check_kmax, check_qb_params, check_t
from .verify import run_suite

COMMANDS = ("tables", "verify", "weight", "roots", "moments")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return "%.17g" % float(v)


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


def render(columns, rows, params, fmt) -> str:
    """Serialize a table as CSV (``%.17g``, LF endings) or JSON."""
    if fmt == "json":
        doc = {
            "params": params,
            "rows": [{c: _jsonable(r[c]) for c in columns} for r in rows],
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


TABLE_COLUMNS = ["k", "alpha_re", "alpha_im", "alpha_abs", "kappa_inv_sq", "ell", "M", "c", "d"]


def table_rows(family, params, kmax, t=0.0):
    """One row per ``k``: ``alpha_{k-1}``, ``kappa_k^-2``, ``ell_{k+1}``,
    ``M_{k+1}``, ``c_{k+1}``, ``d_{k+1}``. Undefined entries are ``None``."""
    seq = opuc.build_opuc(family, params, kmax, t)
    chain = params.lam > 0
    if chain:
        ell = chainseq.minimal_params(params, kmax)
        M = chainseq.maximal_params(params, kmax)
    rows = []
    for k in range(kmax + 1):
        a = seq.verblunsky[k - 1] if k >= 1 else None
        rows.append(
            {
                "k": k,
                "alpha_re": None if a is None else float(a.real),
                "alpha_im": None if a is None else float(a.imag),
                "alpha_abs": None if a is None else float(abs(a)),
                "kappa_inv_sq": float(seq.kappa_inv_sq[k]),
                "ell": float(ell[k]) if chain else None,
                "M": float(M[k]) if chain else None,
                "c": chainseq.c_coeff(params, k + 1) if chain else None,
                "d": chainseq.d_coeff(params, k) if chain and k >= 1 else None,
            }
        )
    return rows


def _cmd_tables(args, params):
    return TABLE_COLUMNS, table_rows(args.family, params, args.kmax, args.t), 0


def _cmd_verify(args, params):
    results = run_suite(params, args.kmax, t=args.t if args.t else 0.3)
    rows = [
        {
            "check": r.name,
            "residual": r.residual,
            "threshold": r.threshold,
            "status": "PASS" if r.passed else "FAIL",
        }
        for r in results
    ]
    code = 0 if all(r.passed for r in results) else 1
    return ["check", "residual", "threshold", "status"], rows, code


def _cmd_weight(args, params):
    spec = opuc.MeasureSpec(args.family, params, args.t)
    theta = 2 * math.pi * np.arange(args.n) / args.n
    w = spec.weight(theta)
    if args.family == "pastro":
        sz = [None] * args.n
    else:
        sz = np.abs(opuc.szego_function(args.family, params, np.exp(1j * theta), t=args.t)) ** 2
    rows = [
        {"theta": float(theta[i]), "weight": float(w[i]), "szego_mod_sq": None if sz[i] is None else float(sz[i])}
        for i in range(args.n)
    ]
    return ["theta", "weight", "szego_mod_sq"], rows, 0


def _cmd_roots(args, params):
    R = r_poly(params, args.kmax)
    rows = []
    for k in range(1, args.kmax + 1):
        zs = roots(R[k])
        for j, (z, a, r) in enumerate(zip(zs.zeros, zs.angles, zs.radial_residuals), start=1):
            rows.append(
                {"k": k, "j": j, "re": float(z.real), "im": float(z.imag), "angle": float(a), "radial_residual": float(r)}
            )
    return ["k", "j", "re", "im", "angle", "radial_residual"], rows, 0


def _cmd_moments(args, params):
    spec = opuc.MeasureSpec(args.family, params, args.t)
    rows = []
    for j in range(-args.kmax, args.kmax + 1):
        closed = opuc.measure_moment(spec, j)
        quad, n = quadlab.auto_refine(spec, lambda z: z ** (-j), tol=args.tol)
        rows.append(
            {
                "j": j,
                "closed_re": closed.real,
                "closed_im": closed.imag,
                "quad_re": quad.real,
                "quad_im": quad.imag,
                "abs_diff": abs(closed - quad),
                "n_nodes": n,
            }
        )
    return ["j", "closed_re", "closed_im", "quad_re", "quad_im", "abs_diff", "n_nodes"], rows, 0


HANDLERS = {
    "tables": _cmd_tables,
    "verify": _cmd_verify,
    "weight": _cmd_weight,
    "roots": _cmd_roots,
    "moments": _cmd_moments,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, required=True, help="base, 0 < q <= 0.999")
    common.add_argument("--b-re", type=float, required=True, help="Re(b) = lambda")
    common.add_argument(
        "--b-im", type=float, default=0.0, help="Im(b); with b = lambda - i*eta this is -eta"
    )
    common.add_argument("--kmax", type=int, default=8)
    common.add_argument("--t", type=float, default=0.0, help="point mass at z = 1 (check family)")
    common.add_argument("--family", choices=opuc.FAMILIES, default="hat")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float, default=1e-13, help="quadrature refinement tolerance")
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="qopuc",
        description="OPUC from basic hypergeometric functions: tables, checks and samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("tables", parents=[common], help="Verblunsky, norm and chain-sequence table")
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    w = sub.add_parser("weight", parents=[common], help="sample weight and |Szego|^2")
    w.add_argument("--n", type=int, default=256, help="number of uniform angles")
    sub.add_parser("roots", parents=[common], help="zeros of R_k for k = 1..kmax")
    sub.add_parser("moments", parents=[common], help="closed-form vs quadrature moments")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        family = check_family(args.family)
        check_kmax(args.kmax)
        args.t = check_t(args.t, family)
        needs_chain = args.command in ("verify", "roots") or family != "pastro"
        params = check_qb_params(args.q, args.b_re, args.b_im, positive_lambda=needs_chain)
        if args.command == "weight" and args.n < 1:
            raise QOPUCError("n must be positive")
    except (QOPUCError, ValueError) as exc:
        print(f"qopuc: error: {exc}", file=sys.stderr)
        return 2

    columns, rows, code = HANDLERS[args.command](args, params)
    meta = {
        "command": args.command,
        "family": family,
        "q": args.q,
        "b_re": args.b_re,
        "b_im": args.b_im,
        "kmax": args.kmax,
        "t": args.t,
        "tol": args.tol,
    }
    text = render(columns, rows, meta, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
