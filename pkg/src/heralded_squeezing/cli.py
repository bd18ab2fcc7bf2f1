"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 tolerance or regression failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import warnings

import numpy as np

from . import distill, fock, generating
from .phase_space import VACUUM_VARIANCE
from .squeezing import DISTILLATION_EPSILON, Kind, OpKind, classify_distillable, var_svs

EXIT_OK, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 1, 2
CONVENTION = f"vacuum quadrature variance = {VACUUM_VARIANCE}"

# regression guards
TABLE1_EXPECTED = {
    "PS": [False, True, False, True],
    "PA": [False, False, False, False],
    "PC": [False, True, True, True],
}
TABLE2_EXPECTED = {
    "2-PS": dict(r_max=3.6e-4, lambda_opt=0.38, t_opt=0.55, var_svs_at_opt=0.23, d_at_opt=0.05, p_at_opt=7.9e-3),
    "2-PC": dict(r_max=5.9e-4, lambda_opt=0.22, t_opt=0.13, var_svs_at_opt=0.32, d_at_opt=0.12, p_at_opt=5.0e-3),
}
# (kind, tolerance): relative for the figures of merit, absolute otherwise
TABLE2_TOLERANCE = dict(
    r_max=("rel", 0.05),
    lambda_opt=("abs", 0.02),
    t_opt=("abs", 0.03),
    var_svs_at_opt=("abs", 0.01),
    d_at_opt=("abs", 0.01),
    p_at_opt=("rel", 0.05),
)
SWEEP_ALIASES = {"var_vs_lambda": "var_vs_lambda_at_Topt", "topt_vs_lambda": "Topt_vs_lambda"}


class DomainError(ValueError):
    pass


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return value


def _emit(rows: list[dict], fmt: str, out: str | None, meta: dict | None = None):
    if fmt == "json":
        payload = {"convention": CONVENTION, **(meta or {}), "rows": rows}
        text = json.dumps(payload, indent=2, default=float) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# {CONVENTION}\n")
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _fmt(v) for k, v in row.items()})
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _op_from_args(args) -> OpKind:
    if args.op is None:
        raise DomainError("--op is required")
    return OpKind(Kind(args.op.upper()), args.order)


def _check_lambda(lam):
    if lam is None or not 0 <= lam < 1:
        raise DomainError(f"--lambda must satisfy 0 <= lambda < 1, got {lam}")


def _check_T(T):
    if T is None or not 0 <= T <= 1:
        raise DomainError(f"--T must satisfy 0 <= T <= 1, got {T}")


def cmd_point(args) -> int:
    op = _op_from_args(args)
    _check_lambda(args.lam)
    _check_T(args.T)
    note = ""
    try:
        pt = distill.enhancement(op, args.lam, args.T)
        row = pt.as_row()
    except generating.VanishingProbabilityError as exc:
        note = f"zero heralding probability: {exc}"
        row = dict(op=op.label, **{"lambda": args.lam}, T=args.T, var=float("nan"), d_ng=0.0, probability=0.0, r_product=0.0)
    row["var_svs"] = float(var_svs(args.lam))
    row["var_db"] = float(distill.to_db(row["var"])) if np.isfinite(row["var"]) else float("nan")
    row["var_svs_db"] = float(distill.to_db(row["var_svs"]))
    if args.format == "text":
        for key, value in row.items():
            print(f"{key:>12}: {value}")
        if note:
            print(f"{'note':>12}: {note}")
        print(f"{'convention':>12}: {CONVENTION}")
    else:
        _emit([row], args.format, args.out, {"note": note} if note else None)
    return EXIT_OK


def table1(epsilon: float = DISTILLATION_EPSILON) -> dict[str, list[bool]]:
    return {kind: [classify_distillable(OpKind(Kind(kind), order), epsilon) for order in range(1, 5)] for kind in TABLE1_EXPECTED}


def cmd_table1(args) -> int:
    result = table1(args.epsilon)
    rows = [dict(op=kind, order=order + 1, distillable=flag) for kind, flags in result.items() for order, flag in enumerate(flags)]
    if args.format == "text":
        print("op   n=1 n=2 n=3 n=4")
        for kind, flags in result.items():
            print(f"{kind:<4} " + " ".join(f"{'yes' if f else 'no':>3}" for f in flags))
    else:
        _emit(rows, args.format, args.out)
    if result != TABLE1_EXPECTED:
        print("table1: classification deviates from the reference matrix", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def table2_deviations(record: distill.OptimumRecord) -> dict[str, float]:
    """Columns outside tolerance, mapped to their deviation (relative or absolute)."""
    expected = TABLE2_EXPECTED[record.op.label]
    bad = {}
    for key, (kind, tol) in TABLE2_TOLERANCE.items():
        got, want = getattr(record, key), expected[key]
        dev = abs(got - want) / abs(want) if kind == "rel" else abs(got - want)
        if dev > tol:
            bad[key] = dev
    return bad


def cmd_table2(args) -> int:
    records = [distill.optimize_R(OpKind.parse(label)) for label in TABLE2_EXPECTED]
    rows = [r.as_row() for r in records]
    if args.format == "text":
        print(f"{'op':<5} {'r_max':>10} {'lambda':>7} {'T':>7} {'var_svs':>8} {'D':>7} {'P':>10}")
        for r in records:
            print(
                f"{r.op.label:<5} {r.r_max:10.3e} {r.lambda_opt:7.4f} {r.t_opt:7.4f} "
                f"{r.var_svs_at_opt:8.4f} {r.d_at_opt:7.4f} {r.p_at_opt:10.3e}"
            )
    else:
        _emit(rows, args.format, args.out)
    failed = False
    for r in records:
        for key, dev in table2_deviations(r).items():
            failed = True
            print(
                f"table2: {r.op.label} {key} = {getattr(r, key):.4g} outside tolerance "
                f"of reference {TABLE2_EXPECTED[r.op.label][key]:.4g} (deviation {dev:.3g})",
                file=sys.stderr,
            )
    return EXIT_TOLERANCE if failed else EXIT_OK


def cmd_sweep(args) -> int:
    kind = SWEEP_ALIASES.get(args.kind.lower(), args.kind)
    if kind not in distill.SWEEPS:
        raise DomainError(f"--kind must be one of {', '.join(distill.SWEEPS)}")
    if args.ops:
        ops = [OpKind.parse(text) for text in args.ops.split(",")]
    else:
        ops = [_op_from_args(args)]
    if kind == "D_and_P_vs_T":
        _check_lambda(args.lam)
    rows = []
    for op in ops:
        rows += [pt.as_row() for pt in distill.curve(op, kind, args.grid, lam=args.lam)]
    _emit(rows, "json" if args.format == "json" else "csv", args.out, {"sweep": kind})
    return EXIT_OK


def oracle_grid(args):
    if args.mn:
        m, n = (int(x) for x in args.mn.split(","))
        mns = [(m, n)]
    else:
        mns = list(itertools.product(range(4), repeat=2))
    lams = [args.lam] if args.lam is not None else [0.1, 0.3, 0.5, 0.7]
    Ts = [args.T] if args.T is not None else [0.1, 0.3, 0.5, 0.7, 0.9]
    for lam in lams:
        _check_lambda(lam)
    for T in Ts:
        _check_T(T)
    return [(m, n, lam, T) for (m, n) in mns for lam in lams for T in Ts]


def oracle_check(cases, cutoff=None, oracle_tol=1e-14):
    """Compare engine and Fock oracle; returns per-case rows and unconverged count."""
    rows = []
    unconverged = 0
    for m, n, lam, T in cases:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", fock.UnconvergedTailWarning)
            try:
                orc = fock.heralded_state(m, n, lam, T, cutoff=cutoff, tol=oracle_tol)
            except ValueError:
                orc = None
        unconverged += any(issubclass(w.category, fock.UnconvergedTailWarning) for w in caught)
        p_eng = generating.probability(m, n, lam, T)
        if orc is None:
            rows.append(dict(m=m, n=n, lam=lam, T=T, p_engine=p_eng, p_oracle=0.0, dp_rel=0.0 if p_eng < 1e-300 else 1.0, dvar_rel=0.0))
            continue
        res = generating.symmetric_moments(m, n, lam, T)
        rows.append(
            dict(
                m=m,
                n=n,
                lam=lam,
                T=T,
                p_engine=res.probability,
                p_oracle=orc.probability,
                dp_rel=abs(res.probability - orc.probability) / orc.probability,
                dvar_rel=abs(res.var_q - orc.var_q) / abs(orc.var_q),
            )
        )
    return rows, unconverged


def cmd_oracle_check(args) -> int:
    cases = oracle_grid(args)
    rows, unconverged = oracle_check(cases, cutoff=args.cutoff)
    max_p = max(r["dp_rel"] for r in rows)
    max_v = max(r["dvar_rel"] for r in rows)
    max_abs = max(abs(r["p_engine"] - r["p_oracle"]) for r in rows)
    if unconverged:
        print(f"warning: {unconverged} case(s) with unconverged Fock tail; raise --cutoff", file=sys.stderr)
    if args.format == "text":
        print(f"cases: {len(rows)}")
        print(f"max relative deviation, probability: {max_p:.3e}")
        print(f"max relative deviation, var_q:       {max_v:.3e}")
        print(f"max absolute deviation, probability: {max_abs:.3e}")
    else:
        _emit(rows, args.format, args.out)
    if max(max_p, max_v) > args.tolerance:
        print(f"oracle-check: deviation above tolerance {args.tolerance:g}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heralded-squeezing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text"):
        choices = ["text", "csv", "json"] if default_format == "text" else ["csv", "json"]
        p.add_argument("--format", choices=choices, default=default_format)
        p.add_argument("--out", help="write output to this file instead of stdout")

    def op_flags(p):
        p.add_argument("--op", choices=["ps", "pa", "pc", "PS", "PA", "PC"])
        p.add_argument("--order", type=int, default=2)

    p = sub.add_parser("point", help="evaluate one operation at one (lambda, T)")
    op_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("table1", help="which operations distill squeezing")
    p.add_argument("--epsilon", type=float, default=DISTILLATION_EPSILON)
    common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", help="optimal trade-off between enhancement and probability")
    common(p)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("sweep", help="tabulate curves and contour data")
    p.add_argument("--kind", required=True, help=", ".join(distill.SWEEPS))
    op_flags(p)
    p.add_argument("--ops", help="comma-separated list such as ps:2,pc:2")
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--lambda", dest="lam", type=float)
    common(p, default_format="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="cross-check the generating function against the Fock simulation")
    p.add_argument("--mn", help="single 'm,n' pair instead of the default 4x4 grid")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--cutoff", type=int, help="fixed Fock cutoff (default: adaptive)")
    p.add_argument("--tolerance", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
