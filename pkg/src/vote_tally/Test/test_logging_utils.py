import logging

import pytest

from vote_tally.Models.errors import ConfigError
from vote_tally.Utils.logging_utils import (
    MAX_ARG_TEXT,
    _describe,
    log_function_call,
    set_console_level,
    setup_logger,
)


def test_setup_logger_is_idempotent():
    first = setup_logger("vote_tally.test_logging")
    again = setup_logger("vote_tally.test_logging")
    assert first is again
    assert len(first.handlers) >= 1
    assert first.propagate is False


def test_set_console_level_changes_console_handlers_only():
    logger = setup_logger("vote_tally.test_levels")
    set_console_level("debug")
    consoles = [h for h in logger.handlers if type(h) is logging.StreamHandler]
    assert consoles and all(h.level == logging.DEBUG for h in consoles)
    set_console_level("not-a-level")
    assert all(h.level == logging.WARNING for h in consoles)


def test_decorated_function_reraises_and_logs_at_debug():
    logger = setup_logger("vote_tally.test_calls")
    records = []

    class Collect(logging.Handler):
        def emit(self, record):
            records.append(record)

    collector = Collect(level=logging.DEBUG)
    logger.addHandler(collector)
    try:
        @log_function_call(logger)
        def bad_seats(seats):
            raise ConfigError(f"number of seats must be positive, got {seats}")

        with pytest.raises(ConfigError):
            bad_seats(0)
    finally:
        logger.removeHandler(collector)

    messages = [r.getMessage() for r in records]
    assert any(m.startswith("Calling") and "bad_seats(0)" in m for m in messages)
    assert any("ConfigError raised at" in m for m in messages)
    assert all(r.levelno == logging.DEBUG for r in records)


def test_long_arguments_are_shortened():
    text = _describe("x" * 1000)
    assert len(text) == MAX_ARG_TEXT + 3
    assert text.endswith("...")
