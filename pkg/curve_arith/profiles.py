import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from shared_utils.errors import ProfileLoadError
from .schema import CurveData, ValidatedCurve
from .zeta import validate_curve

logger = logging.getLogger(__name__)


def parse_profile(text: str, source: str = "<string>") -> CurveData:
    """Strict JSON parse of a profile; floats are rejected by StrictInt fields"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProfileLoadError(f"{source}: not valid JSON ({e.msg})", source=source, offset=e.pos)
    if not isinstance(raw, dict):
        raise ProfileLoadError(f"{source}: profile must be a JSON object", source=source)
    try:
        return CurveData.model_validate(raw)
    except ValidationError as e:
        errors = [
            {"loc": ".".join(str(part) for part in err["loc"]), "msg": err["msg"]}
            for err in e.errors()
        ]
        raise ProfileLoadError(f"{source}: invalid curve profile", source=source, errors=errors)


def load_profile(path: Union[str, Path]) -> ValidatedCurve:
    """Read, parse and validate a curve profile file"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProfileLoadError(f"cannot read curve profile {path}: {e.strerror}", source=str(path))

    raw = parse_profile(text, source=str(path))
    if raw.name == "curve":
        raw = raw.model_copy(update={"name": path.stem})
    curve = validate_curve(raw)
    logger.info(f"Loaded curve profile {curve.name} from {path}")
    return curve
