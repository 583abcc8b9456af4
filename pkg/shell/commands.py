import argparse
import logging

from motring.schema import ClassReport
from motring.text import render_class
from shared_utils.cli import add_common_flags, emit, load_curve, parse_window
from shared_utils.errors import GenusMismatch, UsageError
from .evaluator import evaluate, realize
from .expr import render
from .parser import parse

logger = logging.getLogger(__name__)


def register(subparsers):
    ev = subparsers.add_parser("eval", help="Evaluate a class expression, e.g. \"Jac * BGm * Z(1)\"")
    ev.add_argument("expr", metavar="EXPR")
    ev.add_argument("--g", type=int, default=None, help="Genus binding for Jac and dual")
    ev.add_argument("--window", type=parse_window, default=None,
                    help="vd window LO:HI (use --window=-10: for a negative LO); default -T:T")
    ev.add_argument("--realize", action="store_true", help="Point count over --curve as a q^-1 series")
    ev.add_argument("--curve", default=None, metavar="FILE", help="Curve profile, needed with --realize")
    add_common_flags(ev, trunc=True)
    ev.set_defaults(handler=eval_command)


def eval_command(args: argparse.Namespace) -> int:
    expr = parse(args.expr)
    canonical = render(expr)
    if args.realize:
        if args.curve is None:
            raise UsageError("--realize needs --curve")
        c = load_curve(args.curve)
        if args.g is not None and args.g != c.genus:
            raise GenusMismatch(f"--g {args.g} contradicts the genus {c.genus} of {c.name}", g=args.g, genus=c.genus)
        series = realize(expr, c, args.trunc)
        emit({"expr": canonical, "curve": c.name, "series": series.to_dict()}, args.json, str(series))
        return 0

    window = args.window or (-args.trunc, args.trunc)
    x = evaluate(expr, g=args.g, window=window)
    emit({"expr": canonical, "class": ClassReport.from_class(x)}, args.json, render_class(x))
    return 0
