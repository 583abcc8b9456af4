import argparse
import logging

from shared_utils.cli import add_common_flags, emit, emit_lines, load_curve
from .schema import QuotCountReport
from .strata import compositions, quot_count, quot_count_fixed_det, quot_count_oracle, strata_report

logger = logging.getLogger(__name__)


def register(subparsers):
    quot = subparsers.add_parser("quot", help="Quot scheme point counts via the BB decomposition")
    quot_sub = quot.add_subparsers(dest="action", required=True)

    count = quot_sub.add_parser("count", help="|Div_{n,d}(D)(F_q)| with N = n deg D - d")
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--N", type=int, required=True)
    count.add_argument("--oracle", action="store_true", help="Also compute the zeta-product oracle")
    add_common_flags(count, curve=True)
    count.set_defaults(handler=count_command)

    strata = quot_sub.add_parser("strata", help="One record per BB stratum")
    strata.add_argument("--n", type=int, required=True)
    strata.add_argument("--N", type=int, required=True)
    add_common_flags(strata, curve=True)
    strata.set_defaults(handler=strata_command)

    fixed = quot_sub.add_parser("fixed-det", help="Count of the fixed-determinant locus")
    fixed.add_argument("--n", type=int, required=True)
    fixed.add_argument("--N", type=int, required=True)
    fixed.add_argument(
        "--lenient", action="store_true",
        help="Leave out strata below the projective-bundle threshold instead of failing",
    )
    add_common_flags(fixed, curve=True)
    fixed.set_defaults(handler=fixed_det_command)


def count_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    report = QuotCountReport(
        n=args.n,
        N=args.N,
        curve=c.name,
        count=quot_count(args.n, args.N, c),
        oracle=quot_count_oracle(args.n, args.N, c) if args.oracle else None,
        strata=len(compositions(args.N, args.n)),
    )
    text = str(report.count)
    if report.oracle is not None:
        text += f" (oracle {report.oracle})"
        if report.oracle != report.count:
            logger.error(f"BB count {report.count} differs from the oracle {report.oracle}")
            emit(report, args.json, text)
            return 1
    emit(report, args.json, text)
    return 0


def strata_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)

    def render(record) -> str:
        return (
            f"{record.comp}  codim+ {record.codim_plus}  fixed dim {record.fixed_dim}  "
            f"cells {record.cell_count}"
        )

    emit_lines(strata_report(args.n, args.N, c), args.json, render)
    return 0


def fixed_det_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    value = quot_count_fixed_det(args.n, args.N, c, strict=not args.lenient)
    emit({"n": args.n, "N": args.N, "curve": c.name, "fixed_det_count": value}, args.json, str(value))
    return 0
