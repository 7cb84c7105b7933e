import csv
import io
import os
from typing import BinaryIO, FrozenSet, Iterable, List, Optional, TextIO, Union

import numpy as np
import pandas as pd

from vote_tally.Configs.config import config
from vote_tally.Models.errors import BallotError, BallotParseError
from vote_tally.Models.models import BallotKind, BallotMatrix
from vote_tally.Utils.logging_utils import setup_logger, log_function_call

BallotSource = Union[str, os.PathLike, bytes, BinaryIO, TextIO]

logger = setup_logger(__name__)


class BallotFileHandler:
    """Reads and writes delimiter-separated ballot files.

    The first record holds candidate names; each further record is one ballot.
    """

    def __init__(self, separator: str = config.DEFAULT_SEPARATOR,
                 missing_tokens: Optional[Iterable[str]] = None):
        if len(separator) != 1:
            raise BallotParseError(f"separator must be a single character, got {separator!r}")
        self.logger = setup_logger(__name__)
        self.separator = separator
        self.missing_tokens: Optional[FrozenSet[str]] = (
            None if missing_tokens is None else frozenset(token.strip() for token in missing_tokens)
        )

    @log_function_call(logger)
    def read(self, source: BallotSource, kind: BallotKind = BallotKind.RANKED) -> BallotMatrix:
        """Parse a ballot file into a BallotMatrix."""
        text = self._read_text(source)
        records = [record for record in csv.reader(io.StringIO(text), delimiter=self.separator)]
        # Trailing blank lines are not ballots
        while records and not any(field.strip() for field in records[-1]):
            records.pop()
        if not records:
            raise BallotParseError("empty ballot file")

        header = [name.strip() for name in records[0]]
        body = records[1:]
        if not body:
            raise BallotParseError("no ballots")
        self._check_header(header)

        for row_number, record in enumerate(body, start=1):
            if len(record) != len(header):
                raise BallotParseError(
                    f"expected {len(header)} fields, found {len(record)}", row=row_number
                )

        frame = pd.DataFrame(body, columns=header, dtype=str)
        frame = frame.apply(lambda column: column.str.strip())
        missing = frame.isin(self.tokens_for(kind))
        numeric = frame.mask(missing).apply(pd.to_numeric, errors='coerce')

        bad = numeric.isna() & ~missing
        if bad.to_numpy().any():
            row_index, column_index = np.argwhere(bad.to_numpy())[0]
            raise BallotParseError(
                f"non-numeric field {frame.iat[row_index, column_index]!r}",
                row=int(row_index) + 1,
                column=int(column_index) + 1,
            )

        try:
            ballots = BallotMatrix(tuple(header), numeric.to_numpy(dtype=float), kind)
        except BallotError as e:
            raise BallotParseError(str(e)) from e

        self.logger.info(
            f"Read {ballots.n_ballots} ballots over {ballots.n_candidates} candidates"
        )
        return ballots

    @log_function_call(logger)
    def write(self, ballots: BallotMatrix, target: Union[str, os.PathLike, TextIO]) -> None:
        """Write the canonical form: Missing as empty field, numbers without trailing zeros."""
        frame = pd.DataFrame(
            [[format_number(value) for value in row] for row in ballots.rows],
            columns=list(ballots.candidates),
        )
        if ballots.kind is BallotKind.INDICATOR:
            frame = frame.replace('0', '')
        frame.to_csv(target, sep=self.separator, index=False, lineterminator='\n')

    def tokens_for(self, kind: BallotKind) -> FrozenSet[str]:
        """Explicit tokens win; otherwise score files keep 0 as a score."""
        if self.missing_tokens is not None:
            return self.missing_tokens
        defaults = config.SCORE_MISSING_TOKENS if kind is BallotKind.SCORE else config.MISSING_TOKENS
        return frozenset(defaults)

    def _read_text(self, source: BallotSource) -> str:
        if isinstance(source, (str, os.PathLike)):
            with open(source, 'rb') as handle:
                raw = handle.read()
        elif isinstance(source, bytes):
            raw = source
        else:
            raw = source.read()
        if isinstance(raw, str):
            return raw
        try:
            return raw.decode('utf-8-sig')
        except UnicodeDecodeError as e:
            raise BallotParseError(f"ballot file is not UTF-8: {e}") from e

    def _check_header(self, header: List[str]) -> None:
        if any(name == '' for name in header):
            raise BallotParseError("header contains an empty candidate name")
        duplicates = sorted({name for name in header if header.count(name) > 1})
        if duplicates:
            raise BallotParseError(f"duplicate candidate names: {', '.join(duplicates)}")


def format_number(value: float) -> str:
    if np.isnan(value):
        return ''
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def parse_ballots(source: BallotSource,
                  separator: str = config.DEFAULT_SEPARATOR,
                  missing_tokens: Optional[Iterable[str]] = None,
                  kind: BallotKind = BallotKind.RANKED) -> BallotMatrix:
    return BallotFileHandler(separator, missing_tokens).read(source, kind)


def write_ballots(ballots: BallotMatrix,
                  target: Union[str, os.PathLike, TextIO],
                  separator: str = config.DEFAULT_SEPARATOR) -> None:
    BallotFileHandler(separator).write(ballots, target)
