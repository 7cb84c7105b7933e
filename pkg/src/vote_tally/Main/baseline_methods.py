from typing import Optional, Sequence, Tuple

import numpy as np

from vote_tally.Configs.config import config
from vote_tally.Main.ballots import validate_ballots
from vote_tally.Models.errors import BallotError, ConfigError
from vote_tally.Models.models import (
    BallotKind,
    BallotMatrix,
    Method,
    TallyResult,
    TieDraw,
    ValidationMode,
    validate_seats,
)
from vote_tally.Utils.logging_utils import setup_logger, log_function_call
from vote_tally.Utils.random_draw import SeededDraw, top_k_with_draw

logger = setup_logger(__name__)


def elect_top(candidates: Sequence[str],
              totals: Sequence[float],
              seats: int,
              maximize: bool,
              seed: int,
              eligible: Optional[Sequence[int]] = None,
              purpose: str = "winners") -> Tuple[Tuple[str, ...], Tuple[TieDraw, ...]]:
    """Best `seats` candidates by total, with a seeded draw among ties at the cut."""
    draw = SeededDraw(seed)
    pool = list(range(len(candidates))) if eligible is None else list(eligible)
    selected, tied, drawn = top_k_with_draw(totals, min(seats, len(pool)), maximize, draw, pool)
    draws: Tuple[TieDraw, ...] = ()
    if tied:
        draws = (TieDraw(
            purpose=purpose,
            tied=tuple(candidates[j] for j in tied),
            chosen=tuple(candidates[j] for j in drawn),
        ),)
        logger.info(
            f"Seeded draw (seed {seed}) among {', '.join(draws[0].tied)}: "
            f"chose {', '.join(draws[0].chosen)}"
        )
    return tuple(candidates[j] for j in selected), draws


def _indicator_count(method: Method, ballots: BallotMatrix, seats: int, seed: int,
                     mode: ValidationMode) -> TallyResult:
    if ballots.kind is not BallotKind.INDICATOR:
        raise BallotError(f"{method.value} needs indicator ballots, got {ballots.kind.value}")
    validate_seats(seats, ballots.n_candidates, multi_winner=False)

    report = validate_ballots(ballots, mode)
    totals = ballots.rows[report.valid_mask].sum(axis=0)
    supported = [j for j, total in enumerate(totals) if total > 0]
    elected, draws = elect_top(ballots.candidates, totals, seats, True, seed, supported)

    logger.info(f"{method.value}: {report.valid_count} valid ballots, elected {', '.join(elected) or 'nobody'}")
    return TallyResult(
        method=method,
        candidates=ballots.candidates,
        totals=tuple(float(t) for t in totals),
        elected=elected,
        seats=seats,
        validation=report,
        larger_wins=True,
        tie_draws=draws,
        seed=seed,
    )


@log_function_call(logger)
def count_plurality(ballots: BallotMatrix, seats: int = 1, seed: int = config.DEFAULT_SEED) -> TallyResult:
    """One mark per ballot; the candidates with the most marks win."""
    return _indicator_count(Method.PLURALITY, ballots, seats, seed, ValidationMode.INDICATOR_SINGLE)


@log_function_call(logger)
def count_approval(ballots: BallotMatrix, seats: int = 1, seed: int = config.DEFAULT_SEED) -> TallyResult:
    """Any number of marks per ballot; the candidates with the most marks win."""
    return _indicator_count(Method.APPROVAL, ballots, seats, seed, ValidationMode.INDICATOR_MULTI)


def score_range(ballots: BallotMatrix,
                larger_wins: bool,
                fill: Optional[float],
                min_score: float = 0.0,
                max_score: Optional[float] = None) -> Tuple[float, float, float]:
    """Resolve (fill, min_score, max_score) from the options given.

    When smaller scores win, unscored candidates take the worst score: the
    maximum and the fill default to each other. When larger scores win, the
    fill defaults to the minimum.
    """
    if larger_wins:
        if fill is None:
            fill = min_score
        if max_score is None:
            present = ballots.rows[~np.isnan(ballots.rows)]
            max_score = float(max(present.max(initial=min_score), fill))
    else:
        if fill is None and max_score is None:
            raise ConfigError("score voting with smaller-wins needs a fill score or a maximum score")
        if max_score is None:
            max_score = fill
        if fill is None:
            fill = max_score
    if max_score < min_score:
        raise ConfigError(f"score range is empty: [{min_score}, {max_score}]")
    if not min_score <= fill <= max_score:
        raise ConfigError(f"fill score {fill} lies outside the score range [{min_score}, {max_score}]")
    return float(fill), float(min_score), float(max_score)


@log_function_call(logger)
def count_score(ballots: BallotMatrix,
                seats: int = 1,
                larger_wins: bool = False,
                fill: Optional[float] = None,
                seed: int = config.DEFAULT_SEED,
                min_score: float = 0.0,
                max_score: Optional[float] = None) -> TallyResult:
    """Sum scores per candidate; missing scores are replaced by the fill score."""
    if ballots.kind is not BallotKind.SCORE:
        raise BallotError(f"score voting needs score ballots, got {ballots.kind.value}")
    validate_seats(seats, ballots.n_candidates, multi_winner=False)
    fill, min_score, max_score = score_range(ballots, larger_wins, fill, min_score, max_score)

    report = validate_ballots(ballots, ValidationMode.SCORE, max_score=max_score, min_score=min_score)
    filled = np.where(np.isnan(ballots.rows), fill, ballots.rows)
    totals = filled[report.valid_mask].sum(axis=0)
    elected, draws = elect_top(ballots.candidates, totals, seats, larger_wins, seed)

    logger.info(f"score: {report.valid_count} valid ballots, fill {fill}, elected {', '.join(elected)}")
    return TallyResult(
        method=Method.SCORE,
        candidates=ballots.candidates,
        totals=tuple(float(t) for t in totals),
        elected=elected,
        seats=seats,
        validation=report,
        larger_wins=larger_wins,
        tie_draws=draws,
        seed=seed,
    )