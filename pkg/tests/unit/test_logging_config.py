import json
import logging

import structlog

from phspline.common.logging_config import EventFormatter, bind_correlation_id


def record(message, level=logging.DEBUG):
    return logging.LogRecord("phspline.domain.knots", level, __file__, 1, message, None, None)


def test_domain_events_are_merged_into_the_record():
    line = EventFormatter().format(record(json.dumps({"event": "closed_mu_completed", "n": 2, "m": 3})))
    entry = json.loads(line)
    assert entry["event"] == "closed_mu_completed"
    assert entry["n"] == 2
    assert entry["level"] == "DEBUG"
    assert entry["logger"] == "phspline.domain.knots"


def test_plain_messages_become_the_event():
    entry = json.loads(EventFormatter().format(record("config file not found: x.yml", logging.WARNING)))
    assert entry["event"] == "config file not found: x.yml"
    assert entry["level"] == "WARNING"


def test_correlation_id_replaces_the_previous_command():
    first = bind_correlation_id()
    second = bind_correlation_id("fixed-id")
    assert first != second
    assert structlog.contextvars.get_contextvars() == {"correlation_id": "fixed-id"}
    structlog.contextvars.clear_contextvars()
