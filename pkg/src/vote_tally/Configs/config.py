import os
from dataclasses import dataclass
from typing import Optional, Tuple
from dotenv import load_dotenv

load_dotenv(override=False)


def get_env_str(key: str, default: Optional[str] = None) -> Optional[str]:
    """Safely get a non-empty string from environment variables."""
    value = os.getenv(key)
    if value is None or value.strip() == '':
        return default
    return value.strip()


def get_env_int(key: str, default: int) -> int:
    """Safely get an integer from environment variables."""
    value = os.getenv(key)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        return default


@dataclass
class Config:

    # Counting defaults. These never come from the environment so that a
    # count depends on the ballots and the explicit options only.
    DEFAULT_EPSILON: float = 0.001
    DEFAULT_SEED: int = 0
    DEFAULT_DIGITS: int = 3
    DEFAULT_SEPARATOR: str = ","
    MISSING_TOKENS: Tuple[str, ...] = ("", "NA", "0")
    # 0 is a real score
    SCORE_MISSING_TOKENS: Tuple[str, ...] = ("", "NA")

    # Totals closer than this are treated as tied
    TIE_TOLERANCE: float = 1e-9

    # Two-round percentages
    PERCENT_DIGITS: int = 1

    # Logging
    LOG_LEVEL: str = get_env_str("TALLY_LOG_LEVEL", "WARNING")
    LOG_FILE: Optional[str] = get_env_str("TALLY_LOG_FILE")
    LOG_FILE_LEVEL: str = "DEBUG"

    # Optional external fixtures (tests only)
    DUBLIN_WEST_FILE: Optional[str] = get_env_str("TALLY_DUBLIN_WEST")
    IMS_ELECTION_FILE: Optional[str] = get_env_str("TALLY_IMS_ELECTION")

    # Plot output
    PLOT_SVG_WIDTH_INCHES: int = get_env_int("TALLY_PLOT_WIDTH", 8)
    PLOT_SVG_HEIGHT_INCHES: int = get_env_int("TALLY_PLOT_HEIGHT", 6)


config = Config()
