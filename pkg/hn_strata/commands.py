import argparse
import logging
from fractions import Fraction

from curve_arith.laurent import format_fraction
from shared_utils.cli import add_common_flags, emit, emit_lines, load_curve
from .bounds import enumerate_hn, hn_audit
from .counts import semistable_count

logger = logging.getLogger(__name__)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def register(subparsers):
    hn = subparsers.add_parser("hn", help="Harder-Narasimhan types and bounds")
    hn_sub = hn.add_subparsers(dest="action", required=True)

    enumerate_ = hn_sub.add_parser("enumerate", help="HN types with mu_1 <= mu-max")
    enumerate_.add_argument("--n", type=int, required=True)
    enumerate_.add_argument("--d", type=int, required=True)
    enumerate_.add_argument("--mu-max", type=_rational, required=True, help="Integer or p/q")
    add_common_flags(enumerate_)
    enumerate_.set_defaults(handler=enumerate_command)

    audit = hn_sub.add_parser("audit", help="Codimension, h^1 bound and key inequality per type")
    audit.add_argument("--n", type=int, required=True)
    audit.add_argument("--d", type=int, required=True)
    audit.add_argument("--mu-max", type=_rational, required=True)
    audit.add_argument("--g", type=int, required=True)
    add_common_flags(audit)
    audit.set_defaults(handler=audit_command)

    semistable = hn_sub.add_parser("semistable", help="|Bun^ss_{n,d}(F_q)| by the HN recursion")
    semistable.add_argument("--n", type=int, required=True)
    semistable.add_argument("--d", type=int, required=True)
    semistable.add_argument("--depth", type=int, default=4, help="Slope depth above d/n (default 4)")
    add_common_flags(semistable, curve=True)
    semistable.set_defaults(handler=semistable_command)


def enumerate_command(args: argparse.Namespace) -> int:
    types = enumerate_hn(args.n, args.d, args.mu_max)
    records = [{"blocks": [list(b) for b in tau.blocks], "mu_max": str(tau.mu_max)} for tau in types]
    emit_lines(records, args.json, lambda r: " ".join(f"({n_i},{d_i})" for n_i, d_i in r["blocks"]))
    return 0


def audit_command(args: argparse.Namespace) -> int:
    report = hn_audit(args.n, args.d, args.mu_max, args.g)
    text = "\n".join(
        f"{r.blocks}  codim {r.codim}  h1<= {r.h1_upper}  defect {r.defect}  key {r.key_inequality_residual}"
        for r in report.records
    )
    text += f"\n{report.types} types, min key residual {report.min_key_residual}"
    emit(report, args.json, text)
    if report.min_key_residual is not None and report.min_key_residual < 0:
        logger.error(f"Key inequality fails for n={args.n}, d={args.d}")
        return 1
    return 0


def semistable_command(args: argparse.Namespace) -> int:
    c = load_curve(args.curve)
    value = format_fraction(semistable_count(args.n, args.d, c, args.depth))
    emit(
        {"n": args.n, "d": args.d, "depth": args.depth, "curve": c.name, "semistable_count": value},
        args.json,
        value,
    )
    return 0
