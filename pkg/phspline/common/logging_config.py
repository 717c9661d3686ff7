"""
Logging for phspline commands. Everything goes to stderr; stdout carries the
result document only.
"""

import json
import logging
import sys
from typing import Any, Dict, Optional
from uuid import uuid4

import structlog


class EventFormatter(logging.Formatter):
    """
    One JSON object per record. Domain modules log ``json.dumps({"event": ...})``
    strings; those fields are merged into the record instead of nested.
    """

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {"level": record.levelname, "logger": record.name}
        message = record.getMessage()
        try:
            payload = json.loads(message)
        except ValueError:
            payload = None
        if isinstance(payload, dict) and "event" in payload:
            entry.update(payload)
        else:
            entry["event"] = message
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


def setup_logging(level: str = "WARNING", enable_json: bool = True) -> None:
    """Route the stdlib root logger and structlog to stderr at ``level``."""
    logging.root.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    if enable_json:
        handler.setFormatter(EventFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logging.root.addHandler(handler)
    logging.root.setLevel(getattr(logging, level.upper()))

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer() if enable_json else structlog.dev.ConsoleRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def bind_correlation_id(correlation_id: Optional[str] = None) -> str:
    """Tag every structlog event of the current command with one id."""
    correlation_id = correlation_id or str(uuid4())
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(correlation_id=correlation_id)
    return correlation_id
