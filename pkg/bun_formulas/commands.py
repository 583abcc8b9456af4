import argparse
import logging

from curve_arith.laurent import format_fraction
from motring.schema import ClassReport
from motring.text import render_class
from shared_utils.cli import add_common_flags, emit, load_curve, parse_window
from shared_utils.errors import EXIT_OK, EXIT_VERIFICATION_FAILED
from .checks import convergence_audit
from .formulas import bd_class, conj_motive, harder_count, harder_series
from .schema import Grid, Label
from .verify import run_suite

logger = logging.getLogger(__name__)


def register(subparsers):
    bun = subparsers.add_parser("bun", help="Formulas for Bun_{n,d}")
    bun_sub = bun.add_subparsers(dest="action", required=True)

    harder = bun_sub.add_parser("harder", help="Harder's stacky point count")
    harder.add_argument("--n", type=int, required=True)
    harder.add_argument("--series", action="store_true", help="Print the q^-1 expansion to --trunc instead")
    add_common_flags(harder, curve=True, trunc=True)
    harder.set_defaults(handler=harder_command)

    bd = bun_sub.add_parser("bd", help="Behrend-Dhillon class on a vd window")
    bd.add_argument("--n", type=int, required=True)
    bd.add_argument("--g", type=int, required=True)
    bd.add_argument("--window", type=parse_window, default=None, help="LO:HI; default -T:")
    add_common_flags(bd, trunc=True)
    bd.set_defaults(handler=bd_command)

    conj = bun_sub.add_parser("conjecture", help="Conjectural homological motive on a vd window")
    conj.add_argument("--n", type=int, required=True)
    conj.add_argument("--g", type=int, required=True)
    conj.add_argument("--window", type=parse_window, default=None, help="LO:HI; default :T")
    add_common_flags(conj, trunc=True)
    conj.set_defaults(handler=conjecture_command)

    convergence = bun_sub.add_parser("convergence", help="Quot counts against Harder's count")
    convergence.add_argument("--n", type=int, required=True)
    convergence.add_argument("--d", type=int, required=True)
    convergence.add_argument("--d0", type=int, required=True)
    convergence.add_argument("--lmax", type=int, required=True)
    add_common_flags(convergence, curve=True)
    convergence.set_defaults(handler=convergence_command)

    verify = subparsers.add_parser("verify", help="Run the verification suite")
    verify_sub = verify.add_subparsers(dest="action", required=True)
    verify_all = verify_sub.add_parser("all", help="Every check; exit 1 if any fails")
    verify_all.add_argument("--grid", choices=[g.value for g in Grid], default=Grid.SMALL.value)
    verify_all.add_argument("--workers", type=int, default=None, help="Worker threads (default BUNMOT_WORKERS)")
    verify_all.add_argument("--table", action="store_true", help="Print a plain-text table instead of the JSON verdict")
    add_common_flags(verify_all)
    verify_all.set_defaults(handler=verify_command)


def harder_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    if args.series:
        series = harder_series(args.n, c, args.trunc)
        emit({"n": args.n, "curve": c.name, "series": series.to_dict()}, args.json, str(series))
        return EXIT_OK
    value = format_fraction(harder_count(args.n, c))
    emit({"n": args.n, "curve": c.name, "harder_count": value}, args.json, value)
    return EXIT_OK


def bd_command(args: argparse.Namespace) -> int:
    window = args.window or (-args.trunc, None)
    x = bd_class(args.n, args.g, window)
    report = ClassReport.from_class(x).model_copy(update={"label": Label.THEOREM.value})
    emit(report, args.json, render_class(x))
    return EXIT_OK


def conjecture_command(args: argparse.Namespace) -> int:
    window = args.window or (None, args.trunc)
    x = conj_motive(args.n, args.g, window)
    label = Label.THEOREM if args.n == 1 else Label.CONJECTURAL
    report = ClassReport.from_class(x).model_copy(update={"label": label.value})
    emit(report, args.json, render_class(x))
    return EXIT_OK


def convergence_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    report = convergence_audit(args.n, args.d, args.d0, c, args.lmax)
    lines = [f"limit {report.limit}"]
    lines += [
        f"l={row.l}  N={row.N}  rank={row.rank}  r_l={row.r_l}  delta={row.delta}  v={row.valuation}"
        for row in report.rows
    ]
    emit(report, args.json, "\n".join(lines))
    return EXIT_OK


def verify_command(args: argparse.Namespace) -> int:
    verdict = run_suite(Grid(args.grid), workers=args.workers)
    lines = [
        f"{r.status.value:4}  {r.label.value:11}  {r.name}  ({r.cases} cases)" for r in verdict.checks
    ]
    lines.append(f"{verdict.summary.total - verdict.summary.failed}/{verdict.summary.total} checks pass")
    emit(verdict, args.json or not args.table, "\n".join(lines))
    return EXIT_OK if verdict.passed else EXIT_VERIFICATION_FAILED
