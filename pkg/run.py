import sys

from vote_tally.Main.main import run_cli
from vote_tally.Utils.logging_utils import setup_logger

logger = setup_logger(__name__)

if __name__ == "__main__":
    try:
        sys.exit(run_cli())
    except KeyboardInterrupt:
        logger.info("Count interrupted by user")
        sys.exit(130)
