from typing import List, Tuple

import numpy as np

from vote_tally.Configs.config import config
from vote_tally.Main.ballots import prepare_ranked, remove_candidates
from vote_tally.Main.baseline_methods import elect_top
from vote_tally.Models.errors import ConfigError
from vote_tally.Models.models import (
    BallotMatrix,
    CondorcetResult,
    PairwiseMatrix,
    TieDraw,
    TwoRoundResult,
)
from vote_tally.Utils.logging_utils import setup_logger, log_function_call

logger = setup_logger(__name__)


def _percent(values: np.ndarray) -> Tuple[float, ...]:
    total = values.sum()
    if total <= 0:
        return tuple(0.0 for _ in values)
    return tuple(float(v) for v in 100.0 * values / total)


@log_function_call(logger)
def count_two_round(ballots: BallotMatrix, seed: int = config.DEFAULT_SEED) -> TwoRoundResult:
    """Two-round runoff counted from a single ranked ballot.

    A strict majority of first preferences wins outright. Otherwise the top
    two go to a runoff in which each ballot counts for whichever finalist it
    ranks higher; ballots ranking neither are exhausted.
    """
    if ballots.n_candidates < 2:
        raise ConfigError("two-round runoff needs at least two candidates")
    valid, report = prepare_ranked(ballots)
    candidates = valid.candidates
    first = (valid.rows == 1).sum(axis=0).astype(float)
    n_valid = valid.n_ballots
    draws: List[TieDraw] = []

    leader = int(np.argmax(first))
    if first[leader] > n_valid / 2:
        runoff = np.zeros_like(first)
        runoff[leader] = first[leader]
        logger.info(f"{candidates[leader]} has a majority of first preferences ({first[leader]:.0f}/{n_valid})")
        return TwoRoundResult(
            candidates=candidates,
            first_totals=tuple(float(v) for v in first),
            first_percent=_percent(first),
            finalists=(candidates[leader],),
            runoff_totals=tuple(float(v) for v in runoff),
            runoff_percent=_percent(runoff),
            elected=(candidates[leader],),
            exhausted_count=int(n_valid - first[leader]),
            validation=report,
            ballots=valid,
            seed=seed,
        )

    finalists, finalist_draws = elect_top(candidates, first, 2, True, seed, purpose="finalists")
    draws.extend(finalist_draws)
    a, b = (candidates.index(name) for name in finalists)

    ranks = np.where(np.isnan(valid.rows), np.inf, valid.rows)
    for_a = ranks[:, a] < ranks[:, b]
    for_b = ranks[:, b] < ranks[:, a]
    runoff = np.zeros_like(first)
    runoff[a] = for_a.sum()
    runoff[b] = for_b.sum()
    exhausted = int(n_valid - runoff[a] - runoff[b])

    elected, runoff_draws = elect_top(candidates, runoff, 1, True, seed, [a, b], purpose="runoff")
    draws.extend(runoff_draws)
    logger.info(
        f"Runoff {finalists[0]} {runoff[a]:.0f} vs {finalists[1]} {runoff[b]:.0f}, "
        f"{exhausted} exhausted; elected {elected[0]}"
    )

    return TwoRoundResult(
        candidates=candidates,
        first_totals=tuple(float(v) for v in first),
        first_percent=_percent(first),
        finalists=finalists,
        runoff_totals=tuple(float(v) for v in runoff),
        runoff_percent=_percent(runoff),
        elected=elected,
        exhausted_count=exhausted,
        validation=report,
        ballots=valid,
        tie_draws=tuple(draws),
        seed=seed,
    )


def pairwise_from_valid(valid: BallotMatrix) -> PairwiseMatrix:
    """Head-to-head comparison of already validated ballots.

    A ranked candidate beats every unranked one; unranked candidates tie.
    """
    ranks = np.where(np.isnan(valid.rows), np.inf, valid.rows)
    preferences = (ranks[:, :, None] < ranks[:, None, :]).sum(axis=0)
    wins = (preferences > preferences.T).astype(int)
    return PairwiseMatrix(valid.candidates, wins, preferences)


@log_function_call(logger)
def pairwise_matrix(ballots: BallotMatrix) -> PairwiseMatrix:
    valid, _ = prepare_ranked(ballots)
    return pairwise_from_valid(valid)


def _runoff_set(matrix: PairwiseMatrix) -> List[str]:
    totals = matrix.totals
    cut = sorted(totals, reverse=True)[1]
    return [name for name, total in zip(matrix.candidates, totals) if total >= cut]


@log_function_call(logger)
def condorcet(ballots: BallotMatrix, runoff: bool = False) -> CondorcetResult:
    """Condorcet winner and loser, with an optional runoff among the leaders.

    The runoff keeps the candidates with the most pairwise wins (at least
    two) and repeats the comparison on ballots re-ranked over them, until a
    winner emerges or the set stops shrinking.
    """
    valid, report = prepare_ranked(ballots)
    matrix = pairwise_from_valid(valid)
    rounds = [matrix]
    winner = matrix.winner

    if winner is None and runoff and valid.n_candidates > 2:
        current = valid
        current_matrix = matrix
        for _ in range(valid.n_candidates):
            keep = _runoff_set(current_matrix)
            if len(keep) == current.n_candidates:
                logger.info(f"Runoff set {keep} does not shrink; no winner")
                break
            dropped = [name for name in current.candidates if name not in keep]
            current = remove_candidates(current, dropped)
            current_matrix = pairwise_from_valid(current)
            rounds.append(current_matrix)
            logger.debug(f"Runoff among {keep}: totals {current_matrix.totals}")
            if current_matrix.winner is not None:
                winner = current_matrix.winner
                break

    logger.info(f"Condorcet winner: {winner or 'none'}; loser: {matrix.loser or 'none'}")
    return CondorcetResult(
        matrix=matrix,
        rounds=tuple(rounds),
        winner=winner,
        loser=matrix.loser,
        runoff=runoff,
        validation=report,
        ballots=valid,
    )
