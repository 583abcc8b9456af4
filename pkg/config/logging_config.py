"""
Logging for the bunmot CLI.

Command results own stdout, so every handler here writes to stderr (or a
file). Records emitted while a verification check runs carry the check
name, which makes interleaved output from the worker pool readable.
"""
import json
import logging
import sys
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, Iterator, Optional

from config.settings import LOG_LEVEL, LOG_JSON, LOG_FILE

_context: ContextVar[Dict[str, str]] = ContextVar("bunmot_log_context", default={})


@contextmanager
def log_context(**fields: str) -> Iterator[None]:
    """Attach fields (e.g. check="duality") to every record logged inside the block"""
    token = _context.set({**_context.get(), **fields})
    try:
        yield
    finally:
        _context.reset(token)


class ContextFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        record.context = _context.get()
        return True


def _json_default(value):
    # exact rationals stay exact in log lines
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


class JSONFormatter(logging.Formatter):
    """One JSON object per record"""

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
            "line": record.lineno,
        }
        context = getattr(record, "context", None)
        if context:
            entry.update(context)
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        if hasattr(record, "extra_data"):
            entry["extra"] = record.extra_data
        return json.dumps(entry, default=_json_default)


class StandardFormatter(logging.Formatter):
    """Plain text, level coloured when stderr is a terminal"""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(self, colour: Optional[bool] = None):
        super().__init__(fmt="%(asctime)s %(levelname)s %(name)s%(tag)s: %(message)s", datefmt="%H:%M:%S")
        self.colour = sys.stderr.isatty() if colour is None else colour

    def format(self, record: logging.LogRecord) -> str:
        # copy: the file handler formats the same record
        record = logging.makeLogRecord(record.__dict__)
        context = getattr(record, "context", None) or {}
        record.tag = "".join(f" [{value}]" for value in context.values())
        if self.colour:
            record.levelname = f"{self.COLORS.get(record.levelname, '')}{record.levelname}{self.RESET}"
        return super().format(record)


def setup_logging(
    level: Optional[str] = None,
    json_format: Optional[bool] = None,
    log_file: Optional[str] = None,
) -> logging.Logger:
    """
    Configure the root logger for one CLI run.

    Args:
        level: DEBUG, INFO, WARNING, ERROR or CRITICAL (default LOG_LEVEL)
        json_format: JSON lines on stderr (default LOG_JSON)
        log_file: also append JSON lines to this file (default LOG_FILE)
    """
    level = level or LOG_LEVEL
    json_format = LOG_JSON if json_format is None else json_format
    log_file = log_file or LOG_FILE
    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(JSONFormatter() if json_format else StandardFormatter())
    handlers = [console]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(JSONFormatter())
        handlers.append(file_handler)

    context_filter = ContextFilter()
    for handler in handlers:
        handler.setLevel(numeric_level)
        handler.addFilter(context_filter)
        root_logger.addHandler(handler)

    # shrinking output from property tests
    logging.getLogger("hypothesis").setLevel(logging.WARNING)
    return root_logger


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
