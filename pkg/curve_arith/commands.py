import argparse
import logging

from shared_utils.cli import add_common_flags, emit, load_curve
from .laurent import format_fraction
from .schema import CurveReport
from .zeta import hasse_weil_ok, jac_count, point_count, sym_count, zeta_value

logger = logging.getLogger(__name__)


def register(subparsers):
    curve = subparsers.add_parser("curve", help="Curve profile validation")
    curve_sub = curve.add_subparsers(dest="action", required=True)
    validate = curve_sub.add_parser("validate", help="Validate a curve profile and print its invariants")
    add_common_flags(validate, curve=True)
    validate.set_defaults(handler=validate_command)

    count = subparsers.add_parser("count", help="Point counts derived from the zeta function")
    count_sub = count.add_subparsers(dest="action", required=True)

    sym = count_sub.add_parser("sym", help="|C^(j)(F_q)|")
    sym.add_argument("--j", type=int, required=True)
    add_common_flags(sym, curve=True)
    sym.set_defaults(handler=sym_command)

    jac = count_sub.add_parser("jac", help="|Jac(C)(F_q)|")
    add_common_flags(jac, curve=True)
    jac.set_defaults(handler=jac_command)

    zeta = count_sub.add_parser("zeta", help="zeta_C(q^-k) for k >= 2")
    zeta.add_argument("--k", type=int, required=True)
    add_common_flags(zeta, curve=True)
    zeta.set_defaults(handler=zeta_command)


def validate_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    report = CurveReport(
        name=c.name,
        genus=c.genus,
        q=c.q,
        zeta_numerator=c.zeta_numerator,
        jac_count=jac_count(c),
        point_counts=tuple(point_count(c, r) for r in range(1, max(1, 2 * c.genus) + 1)),
        hasse_weil_ok=hasse_weil_ok(c),
    )
    text = (
        f"{c.name}: genus {c.genus} over F_{c.q}, |Jac| = {report.jac_count}, "
        f"|C(F_q^r)| = {list(report.point_counts)}"
    )
    emit(report, args.json, text)
    return 0


def sym_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    value = sym_count(c, args.j)
    emit({"curve": c.name, "j": args.j, "sym_count": value}, args.json, str(value))
    return 0


def jac_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    value = jac_count(c)
    emit({"curve": c.name, "jac_count": value}, args.json, str(value))
    return 0


def zeta_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    value = format_fraction(zeta_value(c, args.k))
    emit({"curve": c.name, "k": args.k, "zeta_value": value}, args.json, value)
    return 0
