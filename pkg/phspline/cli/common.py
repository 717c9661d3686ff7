"""
Plumbing shared by the subcommands: input parsing, document output and the
mapping of exceptions to exit codes (0 ok, 1 numerical failure, 2 bad input).
"""

import functools
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TypeVar

import typer
from pydantic import ValidationError
from structlog import get_logger

from ..common.errors import InputError, NumericalError, PHSplineError
from ..common.logging_config import bind_correlation_id, setup_logging
from ..common.numbers import dumps
from ..common.settings import settings
from ..models.base import CurveDocument

logger = get_logger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_INPUT = 2


def init_command(name: str) -> str:
    setup_logging(settings.LOG_LEVEL, settings.ENABLE_JSON_LOGS)
    correlation_id = bind_correlation_id()
    logger.info("command_started", command=name)
    return correlation_id


def guarded(name: str) -> Callable[[F], F]:
    """Run a command body with logging set up and errors turned into exit codes."""

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            init_command(name)
            try:
                return func(*args, **kwargs)
            except (InputError, ValidationError, json.JSONDecodeError) as exc:
                logger.warning("command_rejected", command=name, error=str(exc))
                typer.echo(f"error: {exc}", err=True)
                raise typer.Exit(EXIT_INPUT)
            except NumericalError as exc:
                logger.error("command_failed", command=name, error=str(exc))
                parameter = getattr(exc, "parameter", None)
                suffix = f" (t={parameter!r})" if parameter is not None else ""
                typer.echo(f"numerical failure: {exc}{suffix}", err=True)
                raise typer.Exit(EXIT_NUMERICAL)
            except PHSplineError as exc:
                typer.echo(f"error: {exc}", err=True)
                raise typer.Exit(EXIT_NUMERICAL)

        return wrapper  # type: ignore[return-value]

    return decorator


def parse_json_option(raw: str, option: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{option} is not valid JSON: {exc.msg}") from None


def read_document(path: Optional[Path]) -> Dict[str, Any]:
    """JSON object from ``path``, or from stdin when the path is missing or '-'."""
    if path is None or str(path) == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except FileNotFoundError:
            raise InputError(f"input file not found: {path}") from None
    if not text.strip():
        raise InputError("no input document")
    doc = parse_json_option(text, "input")
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    return doc


def emit(document: CurveDocument, out: Optional[Path]) -> None:
    text = dumps(document.model_dump(mode="python"))
    if out is None:
        typer.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("document_written", path=str(out), command=document.command)


def write_text(path: Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    logger.info("file_written", path=str(path))


def pairs(values: Any) -> List[List[float]]:
    return [[float(complex(c).real), float(complex(c).imag)] for c in values]


__all__ = [
    "EXIT_OK",
    "EXIT_NUMERICAL",
    "EXIT_INPUT",
    "guarded",
    "init_command",
    "parse_json_option",
    "read_document",
    "emit",
    "write_text",
    "pairs",
]
