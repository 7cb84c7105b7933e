import logging
import sys
import traceback
from functools import wraps
from typing import Any, Callable, Optional

import colorlog

from vote_tally.Configs.config import config

PACKAGE = 'vote_tally'

CONSOLE_FORMAT = '%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s'
FILE_FORMAT = '%(asctime)s %(levelname)-8s %(name)s [%(filename)s:%(lineno)d] %(message)s'
LEVEL_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'bold_red',
}

# Longest argument text written by log_function_call
MAX_ARG_TEXT = 200


def setup_logger(name: str) -> logging.Logger:
    """Logger with coloured output on stderr and, if TALLY_LOG_FILE is set, a debug file."""
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    # stdout carries the reports
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(_level(config.LOG_LEVEL, logging.WARNING))
    console.setFormatter(colorlog.ColoredFormatter(CONSOLE_FORMAT, log_colors=LEVEL_COLORS))
    logger.addHandler(console)

    if config.LOG_FILE:
        log_file = logging.FileHandler(config.LOG_FILE)
        log_file.setLevel(_level(config.LOG_FILE_LEVEL, logging.DEBUG))
        log_file.setFormatter(logging.Formatter(FILE_FORMAT))
        logger.addHandler(log_file)

    return logger


def set_console_level(level: str) -> None:
    """Apply --log-level to the console handler of every package logger."""
    numeric = _level(level, logging.WARNING)
    for name in list(logging.Logger.manager.loggerDict):
        if name != '__main__' and not name.startswith(PACKAGE):
            continue
        for handler in logging.getLogger(name).handlers:
            if type(handler) is logging.StreamHandler:
                handler.setLevel(numeric)


def _level(name: str, default: int) -> int:
    value = logging.getLevelName(str(name).upper())
    return value if isinstance(value, int) else default


def _describe(value: Any) -> str:
    text = repr(value)
    return text if len(text) <= MAX_ARG_TEXT else text[:MAX_ARG_TEXT] + '...'


def log_error(logger: logging.Logger, error: Exception, context: Optional[str] = None) -> None:
    """Record where an error was raised, with its stack, at DEBUG.

    Bad ballots and options are expected input problems; the CLI prints a
    one-line diagnostic, so the console only shows this with --log-level DEBUG.
    """
    frames = traceback.extract_tb(error.__traceback__)
    origin = f"{frames[-1].filename}:{frames[-1].lineno}" if frames else "unknown"
    logger.debug(
        f"{type(error).__name__} raised at {origin}: {error}\n"
        f"while {context or 'counting'}\n"
        f"{''.join(traceback.format_list(frames))}"
    )


def log_function_call(logger: logging.Logger) -> Callable:
    """Decorator: DEBUG lines on entry and exit, log_error on failure, then re-raise."""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            call = f"{func.__qualname__}({', '.join(_describe(a) for a in args)}"
            if kwargs:
                call += ', ' + ', '.join(f"{k}={_describe(v)}" for k, v in kwargs.items())
            call += ')'
            logger.debug(f"Calling {call}")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                log_error(logger, e, f"calling {call}")
                raise
            logger.debug(f"{func.__qualname__} returned {type(result).__name__}")
            return result

        return wrapper
    return decorator
