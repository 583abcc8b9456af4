"""
Helpers shared by every feature's command module: common flags, curve
loading and result emission.

Results go to stdout, either as JSON (--json) or as plain text; logs go to
stderr.
"""
import argparse
import json
import logging
from typing import Any, Iterable, Optional

from pydantic import BaseModel

from config.settings import DEFAULT_TRUNC, resolve_curve_path
from curve_arith.profiles import load_profile
from curve_arith.schema import ValidatedCurve
from motring.classes import Interval

logger = logging.getLogger(__name__)


def add_common_flags(parser: argparse.ArgumentParser, curve: bool = False, trunc: bool = False):
    parser.add_argument("--json", action="store_true", help="Emit machine-readable JSON")
    if curve:
        parser.add_argument(
            "--curve", required=True, metavar="FILE",
            help="Curve profile: a JSON file, or a name looked up in BUNMOT_CURVE_DIR",
        )
    if trunc:
        parser.add_argument(
            "--trunc", type=int, default=DEFAULT_TRUNC, metavar="T",
            help=f"Truncation order of q^-1 series (default {DEFAULT_TRUNC})",
        )


def parse_window(text: str) -> Interval:
    """LO:HI with either end optional, e.g. '0:20', ':20', '-10:'"""
    lo_text, sep, hi_text = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}")
    try:
        lo = int(lo_text) if lo_text.strip() else None
        hi = int(hi_text) if hi_text.strip() else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"window ends must be integers, got {text!r}")
    return Interval(lo, hi)


def load_curve(name: str) -> ValidatedCurve:
    return load_profile(resolve_curve_path(name))


def _jsonable(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json")
    if isinstance(payload, (list, tuple)):
        return [_jsonable(item) for item in payload]
    if isinstance(payload, dict):
        return {key: _jsonable(value) for key, value in payload.items()}
    return payload


def emit(payload: Any, as_json: bool, text: Optional[str] = None):
    """Print one result document; text defaults to str(payload)"""
    if as_json:
        print(json.dumps(_jsonable(payload), indent=2))
    else:
        print(text if text is not None else str(payload))


def emit_lines(records: Iterable[Any], as_json: bool, render=str):
    """One record per line: JSON lines with --json, rendered text otherwise"""
    for record in records:
        if as_json:
            print(json.dumps(_jsonable(record)))
        else:
            print(render(record))
