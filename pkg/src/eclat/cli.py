"""Command-line front end.

Subcommands: analyze (single curve, full verification), scan (curve
families over prime ranges), export (basis / minimal vectors as text
matrices), decode (one covering-decoder trace as JSON).

Exit codes: 0 all applicable checks pass, 2 input error, 3 a verified
identity failed (which would mean an implementation bug).
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import MAX_ANALYSIS_PRIME, CurveSpec, analyze_curve, scan_curves
from .curve import Curve, enumerate_places
from .decoder import covering_bound, decode
from .field import PrimeField
from .geometry import minimal_vectors
from .lattice import basis, format_matrix_bracket, format_matrix_plain

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3


def _build_table(spec: CurveSpec):
    field = PrimeField(spec.p)
    curve = Curve(field, spec.coeffs)
    return enumerate_places(curve)


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_json_dict(), indent=2))
        return
    r = report
    print(f"curve {r.curve}: n={r.n} epsilon={r.epsilon}")
    if r.d_squared is not None:
        print(f"  min distance^2        {r.d_squared}")
    if r.minimal_count is not None:
        formula = "-" if r.minimal_count_formula is None else r.minimal_count_formula
        print(f"  minimal vectors       {r.minimal_count} (formula {formula})")
    print(f"  det^2 / index / h_F   {r.det_squared} / {r.index} / {r.h_F}")
    if r.well_rounded is not None:
        print(f"  well-rounded          {r.well_rounded}")
        print(f"  spanned by minimal    {r.generated_by_minimal}")
    if r.packing_density is not None:
        print(f"  packing density       {r.packing_density:.6g}")
    if r.covering is not None:
        c = r.covering
        print(
            f"  covering bound        {c.bound:.5f} "
            f"(max seen {c.max_observed:.5f}, lattice-input max {c.a_n1_max:.5f})"
        )
    verdict_list = ", ".join(f"{k}={v}" for k, v in r.verdicts.items())
    print(f"  verdicts              {verdict_list}")


def _summary_line(report) -> str:
    status = "pass" if report.overall_pass else "FAIL"
    return (
        f"{report.curve}  n={report.n:>2} eps={report.epsilon} "
        f"count={report.minimal_count if report.minimal_count is not None else '-':>4} "
        f"det2={report.det_squared:>5}  {status}"
    )


def cmd_analyze(args) -> int:
    try:
        spec = CurveSpec.parse(args.spec)
        report = analyze_curve(spec, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _print_report(report, args.json)
    return EXIT_OK if report.overall_pass else EXIT_VIOLATION


def cmd_scan(args) -> int:
    filter_n = None
    if args.filter:
        key, _, value = args.filter.partition("=")
        if key != "n" or not value.isdigit():
            print(f"error: unsupported filter {args.filter!r}", file=sys.stderr)
            return EXIT_INPUT
        filter_n = int(value)
    if args.p_min < 3 or args.p_min > args.p_max:
        print("error: need 3 <= p_min <= p_max", file=sys.stderr)
        return EXIT_INPUT
    if args.p_max > MAX_ANALYSIS_PRIME:
        print(f"error: p_max beyond desk scale (max {MAX_ANALYSIS_PRIME})",
              file=sys.stderr)
        return EXIT_INPUT
    reports = []
    all_pass = True
    for report in scan_curves(
        args.p_min, args.p_max, samples=args.samples, seed=args.seed,
        filter_n=filter_n,
    ):
        all_pass = all_pass and report.overall_pass
        if args.json:
            reports.append(report.to_json_dict())
        else:
            print(_summary_line(report))
    if args.json:
        print(json.dumps({"reports": reports, "all_pass": all_pass}, indent=2))
    else:
        print(f"scan [{args.p_min}, {args.p_max}]: "
              f"{'all checks pass' if all_pass else 'FAILURES FOUND'}")
    return EXIT_OK if all_pass else EXIT_VIOLATION


def cmd_export(args) -> int:
    try:
        spec = CurveSpec.parse(args.spec)
        table = _build_table(spec)
        if args.what == "basis":
            mat = basis(table).rows
        else:
            if table.n < 3:
                raise ValueError("minimal vectors need n >= 3")
            mvs = minimal_vectors(table)
            import numpy as np

            mat = np.array([v.coeffs for v in mvs.vectors], dtype=np.int64)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "plain":
        sys.stdout.write(format_matrix_plain(mat))
    else:
        sys.stdout.write(format_matrix_bracket(mat))
    return EXIT_OK


def cmd_decode(args) -> int:
    try:
        spec = CurveSpec.parse(args.spec)
        v = [float(tok) for tok in args.vector.split(",")]
        table = _build_table(spec)
        trace = decode(table, v)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = {
        "curve": str(spec),
        "n": table.n,
        "v": list(trace.v),
        "w1": list(trace.w1),
        "S": trace.s,
        "j": trace.j,
        "w2": list(trace.w2),
        "distance": trace.distance,
        "bound": covering_bound(table.n),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eclat",
        description="Exact lattices from elliptic curves over odd prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full verification of one curve")
    pa.add_argument("spec", help="curve as p:a3,a2,a1,a0")
    pa.add_argument("--json", action="store_true")
    pa.add_argument("--samples", type=int, default=10_000)
    pa.add_argument("--seed", type=int, default=0)
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("scan", help="verify every curve over a prime range")
    ps.add_argument("p_min", type=int)
    ps.add_argument("p_max", type=int)
    ps.add_argument("--json", action="store_true")
    ps.add_argument("--samples", type=int, default=10_000)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--filter", help="e.g. n=9 to keep curves with 9 places")
    ps.set_defaults(func=cmd_scan)

    pe = sub.add_parser("export", help="write basis or minimal vectors as text")
    pe.add_argument("spec")
    pe.add_argument("what", choices=("basis", "minimal"))
    pe.add_argument("format", choices=("plain", "bracket"))
    pe.set_defaults(func=cmd_export)

    pd = sub.add_parser("decode", help="decode one span vector (JSON trace)")
    pd.add_argument("spec")
    pd.add_argument("vector", help="comma-separated coordinates, sum ~ 0")
    pd.set_defaults(func=cmd_decode)
    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # vectors like "-1,0,1,..." must not be mistaken for options
    if argv and argv[0] == "decode" and not {"-h", "--help"} & set(argv):
        argv = [argv[0], "--", *argv[1:]]
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
