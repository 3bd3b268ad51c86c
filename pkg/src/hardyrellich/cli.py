"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys

import numpy as np

from . import constants as cc
from . import verify
from .spectral import REFERENCE_POINTS, REFERENCE_T, GridSpec, oracle_constant
from .trial import DEFAULT_TOL

SCHEMA_VERSION = 1

SWEEP_FIELDS = [
    "N", "m", "regime", "k_m", "l_min", "tilde_constant", "upper_bound",
    "prior_constant", "strict_improvement", "oracle_value", "oracle_gap",
]


def fmt(value) -> str:
    """CSV cell: 15 significant digits, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def write_csv(rows, fields, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([fmt(row[f]) for f in fields])


def dump_json(payload, stream):
    json.dump({"schema_version": SCHEMA_VERSION, **payload}, stream, indent=2)
    stream.write("\n")


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _grid(args):
    return GridSpec.symmetric(args.grid_T, args.grid_points)


def sweep_row(N, m, oracle=False, grid=None, kmax=None) -> dict:
    report = cc.sharp_constant(N, m)
    imp = cc.improvement_report(N, m)
    row = {
        "N": N,
        "m": float(m),
        "regime": report.regime.branch.value,
        "k_m": report.k_m,
        "l_min": report.l_min,
        "tilde_constant": report.value,
        "upper_bound": report.params.upper_bound,
        "prior_constant": imp.prior,
        "strict_improvement": imp.strict_improvement,
        "oracle_value": None,
        "oracle_gap": None,
    }
    if oracle:
        res = oracle_constant(N, m, kmax, grid)
        row["oracle_value"] = res.overall_min
        row["oracle_gap"] = res.overall_min - report.value
    return row


# --- subcommands -----------------------------------------------------------


def cmd_constant(args, out):
    report = cc.sharp_constant(args.N, args.m)
    if args.json:
        dump_json({"command": "constant", **report.to_dict()}, out)
        return 0
    print(f"C(N={report.params.N}, m={report.params.m:g}) = {report.value:.15g}", file=out)
    print(f"regime:      {report.regime.branch.value} (proof case {report.regime.proof_case.value})", file=out)
    print(f"l_min:       {report.l_min}", file=out)
    print(f"upper bound: {report.params.upper_bound:.15g}", file=out)
    if report.k_m is not None:
        print(f"k(m):        {report.k_m}", file=out)
        print("branch values:", file=out)
        for l, v in report.branch_values:
            mark = "  <- min" if l == report.l_min else ""
            print(f"  l={l}: {v:.15g}{mark}", file=out)
    if report.degenerate:
        print("note: constant vanishes at these parameters", file=out)
    return 0


def cmd_classify(args, out):
    regime = cc.classify_regime(args.N, args.m)
    payload = {
        "command": "classify",
        "N": args.N,
        "m": args.m,
        "regime": regime.branch.value,
        "proof_case": regime.proof_case.value,
    }
    if args.json:
        dump_json(payload, out)
    else:
        print(f"{regime.branch.value} (proof case {regime.proof_case.value})", file=out)
    return 0


def cmd_compare(args, out):
    imp = cc.improvement_report(args.N, args.m)
    if args.json:
        dump_json({"command": "compare", "N": args.N, "m": args.m, **imp.to_dict()}, out)
        return 0
    prior = "unknown" if imp.prior is None else f"{imp.prior:.15g}"
    print(f"radial-derivative constant: {imp.tilde:.15g}", file=out)
    print(f"full-gradient constant:     {prior}", file=out)
    if imp.strict_improvement is not None:
        print(f"strict improvement:         {'yes' if imp.strict_improvement else 'no'}", file=out)
    return 0


def cmd_boundaries(args, out):
    b = cc.regime_boundaries(args.N)
    if args.json:
        dump_json({"command": "boundaries", "N": args.N, **b}, out)
        return 0
    labels = {
        "integrability": "2 - N (integrability)",
        "m_eq_4_minus_N": "4 - N",
        "lowbad_middle": "2 - sqrt((N-1)^2+1)",
        "middle_highbad": "2 + sqrt((N-1)^2+1)",
        "tz_threshold": "(N+4-2sqrt(N^2-N+1))/3",
    }
    for key, label in labels.items():
        print(f"{label:<28} {b[key]:.12g}", file=out)
    return 0


def cmd_sweep(args, out):
    if args.steps < 2:
        raise cc.ParameterError(f"--steps must be >= 2, got {args.steps}")
    if not args.m_max > args.m_min:
        raise cc.ParameterError(f"empty range: need m-max > m-min, got [{args.m_min}, {args.m_max}]")
    cc.validate_parameters(args.N, args.m_min)
    grid = _grid(args) if args.oracle else None
    ms = np.linspace(args.m_min, args.m_max, args.steps)
    rows = [sweep_row(args.N, float(m), args.oracle, grid, args.kmax) for m in ms]
    if args.json:
        dump_json({"command": "sweep", "fields": SWEEP_FIELDS, "rows": rows}, out)
    else:
        write_csv(rows, SWEEP_FIELDS, out)
    return 0


def cmd_verify(args, out):
    suite = args.suite
    if suite == "trial":
        results = verify.run_trial(eps=args.eps or verify.TRIAL_EPS, tol=args.tol)
    elif suite == "oracle":
        results = verify.run_oracle(grid=_grid(args))
    elif suite == "identities":
        results = verify.run_identities(tol=args.tol)
    else:
        results = verify.run_fulldim(tol=args.tol)
    passed = all(r.passed for r in results)
    if args.json:
        dump_json({
            "command": "verify",
            "suite": suite,
            "passed": passed,
            "cases": [r.to_dict() for r in results],
        }, out)
    else:
        for r in results:
            print(r.line(), file=out)
        n_ok = sum(r.passed for r in results)
        print(f"{suite}: {n_ok}/{len(results)} passed", file=out)
    return 0 if passed else 1


# --- parser ------------------------------------------------------------------


def _eps_list(text):
    try:
        vals = [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of floats: {text!r}")
    if len(vals) < 2:
        raise argparse.ArgumentTypeError("need at least two eps values")
    return vals


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hardyrellich",
        description="Sharp constants of the weighted Hardy-Rellich inequality with radial derivative.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p, csv_flag=False):
        p.add_argument("--json", action="store_true", help="emit JSON")
        if csv_flag:
            p.add_argument("--csv", action="store_true", help="emit CSV (default)")
        p.add_argument("--out", default=None, help="write output to this path")

    def grid_flags(p):
        p.add_argument("--grid-T", type=float, default=REFERENCE_T, help="log-radius window half-width")
        p.add_argument("--grid-points", type=int, default=REFERENCE_POINTS)
        p.add_argument("--kmax", type=int, default=None, help="highest mode for the oracle")

    for name, helptext in [
        ("constant", "sharp constant and regime"),
        ("classify", "regime and proof case"),
        ("compare", "sharp constant against the full-gradient constant"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--m", type=float, required=True)
        output_flags(p)

    p = sub.add_parser("boundaries", help="regime boundaries in m for a dimension")
    p.add_argument("--N", type=int, required=True)
    output_flags(p)

    p = sub.add_parser("sweep", help="constants over a uniform grid of m")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m-min", type=float, required=True)
    p.add_argument("--m-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="add the spectral oracle value per row")
    output_flags(p, csv_flag=True)
    grid_flags(p)

    p = sub.add_parser("verify", help="run a verification battery")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--eps", type=_eps_list, default=None, help="decreasing eps values for the trial suite")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="quadrature tolerance")
    output_flags(p)
    grid_flags(p)
    return parser


COMMANDS = {
    "constant": cmd_constant,
    "classify": cmd_classify,
    "compare": cmd_compare,
    "boundaries": cmd_boundaries,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except (cc.ParameterError, ValueError) as exc:
        print(f"hardyrellich {args.command}: error: {exc}", file=sys.stderr)
        return 2
    with _output(args.out) as out:
        out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
