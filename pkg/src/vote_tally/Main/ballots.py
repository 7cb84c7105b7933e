from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from vote_tally.Models.errors import BallotError, ConfigError
from vote_tally.Models.models import BallotKind, BallotMatrix, ValidationMode, ValidationReport
from vote_tally.Utils.logging_utils import setup_logger, log_function_call

logger = setup_logger(__name__)

BLANK = "blank ballot"
NON_INTEGER = "non-integer ranks"
REPEATED = "repeated ranks"
NON_CONSECUTIVE = "non-consecutive ranks"
MULTIPLE_MARKS = "multiple marks"
NOT_INDICATOR = "entry outside {0,1}"
OUT_OF_RANGE = "score out of range"

_RANKED_MODES = (ValidationMode.STRICT_RANKED, ValidationMode.EQUAL_RANKED)
_INDICATOR_MODES = (ValidationMode.INDICATOR_SINGLE, ValidationMode.INDICATOR_MULTI)


@log_function_call(logger)
def validate_ballots(ballots: BallotMatrix,
                     mode: ValidationMode,
                     max_score: Optional[float] = None,
                     min_score: float = 0.0) -> ValidationReport:
    """Classify every ballot as valid or invalid (with one reason).

    Invalid ballots are reported, never raised. corrected_rows is only
    filled in equal_ranked mode.
    """
    if mode in _RANKED_MODES and ballots.kind is not BallotKind.RANKED:
        raise BallotError(f"{mode.value} validation needs ranked ballots, got {ballots.kind.value}")
    if mode is ValidationMode.SCORE and ballots.kind is not BallotKind.SCORE:
        raise BallotError(f"score validation needs score ballots, got {ballots.kind.value}")

    rows = ballots.rows
    present = ballots.present
    blank = ~present.any(axis=1)

    if mode is ValidationMode.STRICT_RANKED:
        conditions, reasons = _strict_checks(rows, present)
    elif mode is ValidationMode.EQUAL_RANKED:
        conditions, reasons = [], []
    elif mode in _INDICATOR_MODES:
        blank, conditions, reasons = _indicator_checks(rows, mode)
    else:
        if max_score is None:
            raise ConfigError("score validation needs a maximum score")
        if max_score < min_score:
            raise ConfigError(f"score range is empty: [{min_score}, {max_score}]")
        outside = present & ((np.nan_to_num(rows, nan=min_score) < min_score)
                             | (np.nan_to_num(rows, nan=min_score) > max_score))
        conditions, reasons = [outside.any(axis=1)], [OUT_OF_RANGE]

    reason_per_row = np.select([blank] + conditions, [BLANK] + reasons, default='')
    valid_mask = reason_per_row == ''
    invalid_rows = tuple((int(i) + 1, str(reason_per_row[i])) for i in np.flatnonzero(~valid_mask))

    corrected_rows: Tuple[int, ...] = ()
    if mode is ValidationMode.EQUAL_RANKED:
        corrected = _corrected_mask(rows) & valid_mask
        corrected_rows = tuple(int(i) + 1 for i in np.flatnonzero(corrected))
        if corrected_rows:
            logger.warning(f"Votes {', '.join(map(str, corrected_rows))} were corrected")

    if invalid_rows:
        logger.warning(
            f"{len(invalid_rows)} invalid ballots: "
            + ', '.join(f"row {row} ({reason})" for row, reason in invalid_rows[:10])
            + (' ...' if len(invalid_rows) > 10 else '')
        )

    return ValidationReport(
        valid_count=int(valid_mask.sum()),
        invalid_count=int((~valid_mask).sum()),
        invalid_rows=invalid_rows,
        corrected_rows=corrected_rows,
        valid_mask=valid_mask,
    )


def _strict_checks(rows: np.ndarray, present: np.ndarray):
    n_candidates = rows.shape[1]
    n_present = present.sum(axis=1)
    ordered = np.sort(np.where(present, rows, np.inf), axis=1)
    in_prefix = np.arange(n_candidates)[None, :] < n_present[:, None]

    non_integer = (present & (np.mod(np.where(present, rows, 1.0), 1.0) != 0)).any(axis=1)
    repeated = ((ordered[:, 1:] == ordered[:, :-1]) & in_prefix[:, 1:]).any(axis=1)
    gaps = ((ordered != np.arange(1, n_candidates + 1)[None, :]) & in_prefix).any(axis=1)
    return [non_integer, repeated, gaps], [NON_INTEGER, REPEATED, NON_CONSECUTIVE]


def _indicator_checks(rows: np.ndarray, mode: ValidationMode):
    values = np.nan_to_num(rows, nan=0.0)
    outside = ~np.isin(values, (0.0, 1.0)).all(axis=1)
    marks = (values == 1.0).sum(axis=1)
    blank = (marks == 0) & ~outside
    if mode is ValidationMode.INDICATOR_SINGLE:
        return blank, [outside, marks > 1], [NOT_INDICATOR, MULTIPLE_MARKS]
    return blank, [outside], [NOT_INDICATOR]


def _competition_ranks(rows: np.ndarray) -> np.ndarray:
    frame = pd.DataFrame(rows)
    return frame.rank(axis=1, method='min', na_option='keep').to_numpy(dtype=float)


def _corrected_mask(rows: np.ndarray) -> np.ndarray:
    ranked = _competition_ranks(rows)
    return ~((ranked == rows) | (np.isnan(ranked) & np.isnan(rows))).all(axis=1)


def correct_ranking(row: Sequence[float]) -> np.ndarray:
    """Competition ranking of the present entries; NaN stays NaN.

    (1, 1, 2, 3, 3, 3) becomes (1, 1, 3, 4, 4, 4).
    """
    values = np.asarray(row, dtype=float)
    present = values[~np.isnan(values)]
    if (present <= 0).any() or np.isinf(present).any():
        raise BallotError(f"ranks must be positive finite numbers, got {values.tolist()}")
    return pd.Series(values).rank(method='min', na_option='keep').to_numpy(dtype=float)


def correct_matrix(ballots: BallotMatrix) -> Tuple[BallotMatrix, Tuple[int, ...]]:
    """correct_ranking applied to every row, with the 1-based rows it changed."""
    if ballots.kind is not BallotKind.RANKED:
        raise BallotError(f"rank correction needs ranked ballots, got {ballots.kind.value}")
    if ballots.n_ballots == 0:
        return ballots, ()
    changed = _corrected_mask(ballots.rows)
    corrected = BallotMatrix(ballots.candidates, _competition_ranks(ballots.rows), BallotKind.RANKED)
    return corrected, tuple(int(i) + 1 for i in np.flatnonzero(changed))


@log_function_call(logger)
def remove_candidates(ballots: BallotMatrix, names: Iterable[str]) -> BallotMatrix:
    """Drop the named columns and re-rank what is left on every ballot."""
    if ballots.kind is not BallotKind.RANKED:
        raise BallotError(f"candidate removal needs ranked ballots, got {ballots.kind.value}")
    names = {str(name).strip() for name in names}
    if not names:
        return ballots
    unknown = sorted(names - set(ballots.candidates))
    if unknown:
        raise BallotError(f"unknown candidates: {', '.join(unknown)}")
    keep = [j for j, name in enumerate(ballots.candidates) if name not in names]
    if not keep:
        raise BallotError("no candidates remain")

    remaining = BallotMatrix(
        tuple(ballots.candidates[j] for j in keep),
        ballots.rows[:, keep],
        BallotKind.RANKED,
    )
    logger.debug(f"Removed {sorted(names)}; {remaining.n_candidates} candidates remain")
    return correct_matrix(remaining)[0]


def threshold_indicator(ballots: BallotMatrix, ranks: Iterable[int]) -> BallotMatrix:
    """1 where a ballot gives the candidate one of the listed ranks, 0 elsewhere."""
    if ballots.kind is not BallotKind.RANKED:
        raise BallotError(f"thresholding needs ranked ballots, got {ballots.kind.value}")
    ranks = sorted({float(r) for r in ranks})
    if not ranks:
        raise BallotError("rank set for the indicator threshold is empty")
    marks = np.isin(np.nan_to_num(ballots.rows, nan=0.0), ranks)
    return BallotMatrix(ballots.candidates, marks.astype(float), BallotKind.INDICATOR)


def presence_indicator(ballots: BallotMatrix) -> BallotMatrix:
    """1 wherever the ballot carries any entry for the candidate."""
    return BallotMatrix(ballots.candidates, ballots.present.astype(float), BallotKind.INDICATOR)


def has_equal_preferences(ballots: BallotMatrix) -> bool:
    if ballots.kind is not BallotKind.RANKED or ballots.n_ballots == 0:
        return False
    ordered = np.sort(ballots.rows, axis=1)
    return bool((ordered[:, 1:] == ordered[:, :-1]).any())


@log_function_call(logger)
def prepare_ranked(ballots: BallotMatrix, equal_ranking: bool = False) -> Tuple[BallotMatrix, ValidationReport]:
    """Validate, keep the valid ballots and, for equal ranking, correct them."""
    mode = ValidationMode.EQUAL_RANKED if equal_ranking else ValidationMode.STRICT_RANKED
    report = validate_ballots(ballots, mode)
    if report.valid_count == 0:
        raise BallotError("all ballots are invalid")
    valid = ballots.select_rows(report.valid_mask)
    if equal_ranking:
        valid = correct_matrix(valid)[0]
    return valid, report
