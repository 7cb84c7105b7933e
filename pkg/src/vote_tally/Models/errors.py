from typing import Optional


class VoteTallyError(Exception):
    """Base class for every error raised by vote_tally."""


class BallotParseError(VoteTallyError):
    """A ballot file could not be read. Row and column are 1-based, header excluded."""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        self.row = row
        self.column = column
        location = ""
        if row is not None and column is not None:
            location = f" at ({row},{column})"
        elif row is not None:
            location = f" at row {row}"
        super().__init__(f"{message}{location}")


class BallotError(VoteTallyError):
    """Ballot data cannot be used for the requested transform or count."""


class ConfigError(VoteTallyError):
    """Counting options are inconsistent with each other or with the ballots."""


class PlotError(VoteTallyError):
    """Plot datasets cannot be produced for this result."""
