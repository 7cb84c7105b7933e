from typing import List, Tuple

import numpy as np
import pandas as pd

from vote_tally.Models.errors import BallotError
from vote_tally.Models.models import (
    BallotKind,
    BallotMatrix,
    OrderedRanking,
    TieContext,
    TieDirection,
    TiePolicy,
)
from vote_tally.Utils.logging_utils import setup_logger, log_function_call
from vote_tally.Utils.random_draw import SeededDraw, extremal, is_tied

logger = setup_logger(__name__)

LEGACY_TAG = "l"


def preference_counts(ballots: BallotMatrix) -> np.ndarray:
    """M x M matrix: entry (j, p) counts ballots giving candidate j preference p + 1."""
    if ballots.kind is not BallotKind.RANKED:
        raise BallotError(f"preference counts need ranked ballots, got {ballots.kind.value}")
    n_candidates = ballots.n_candidates
    rows = np.nan_to_num(ballots.rows, nan=0.0)
    counts = np.zeros((n_candidates, n_candidates), dtype=int)
    for p in range(n_candidates):
        counts[:, p] = (rows == p + 1).sum(axis=0)
    return counts


def preference_frame(ballots: BallotMatrix) -> pd.DataFrame:
    counts = preference_counts(ballots)
    return pd.DataFrame(
        counts,
        index=pd.Index(ballots.candidates, name='candidate'),
        columns=[str(p + 1) for p in range(ballots.n_candidates)],
    )


@log_function_call(logger)
def ordered_ranking(ballots: BallotMatrix, seed: int = 0) -> OrderedRanking:
    """Rank candidates by first preferences, then second, and so on.

    Rank 1 has the fewest first preferences and is the first to go. Full
    ties are ordered by a seeded draw and flagged as sampled.
    """
    counts = preference_counts(ballots)
    n_candidates = ballots.n_candidates
    draw = SeededDraw(seed).permutation(n_candidates)

    # lexsort treats the last key as primary
    keys = [draw] + [counts[:, p] for p in reversed(range(n_candidates))]
    order = np.lexsort(keys)
    ranks = np.empty(n_candidates, dtype=int)
    ranks[order] = np.arange(1, n_candidates + 1)

    sampled = tuple(
        any(k != j and np.array_equal(counts[j], counts[k]) for k in range(n_candidates))
        for j in range(n_candidates)
    )
    return OrderedRanking(ballots.candidates, tuple(int(r) for r in ranks), sampled)


def history_survivors(ctx: TieContext, policy: TiePolicy) -> List[int]:
    """Tied candidates left after filtering on the count history.

    Counts are scanned first to last (forwards) or last to first
    (backwards), keeping the extremal subset wherever the survivors differ.
    Only counts where every tied candidate was still hopeful are used.
    """
    history = ctx.history
    usable = ~np.isnan(history[:, list(ctx.tied)]).any(axis=1)
    counts = [c for c in range(history.shape[0]) if usable[c]]
    if policy is TiePolicy.BACKWARDS:
        counts.reverse()

    maximize = ctx.direction is TieDirection.FOR_ELECTION
    survivors = list(ctx.tied)
    for c in counts:
        row = history[c]
        reference = row[survivors[0]]
        if all(is_tied(row[j], reference) for j in survivors):
            continue
        survivors = extremal(row, survivors, maximize)
        if len(survivors) == 1:
            break
    return survivors


@log_function_call(logger)
def break_tie(ctx: TieContext, policy: TiePolicy = TiePolicy.FORWARDS,
              legacy: bool = False) -> Tuple[str, str]:
    """Resolve a tie; returns the chosen candidate and its audit tag.

    Tags: f/b when the count history decides, fo/bo when the ordered
    ranking decides, fos/bos when that ranking needed a draw. With legacy
    set, the last-named candidate is elected and the first-named eliminated
    (tag "l").
    """
    names = ctx.original_ballots.candidates
    for_election = ctx.direction is TieDirection.FOR_ELECTION

    if legacy:
        chosen = max(ctx.tied) if for_election else min(ctx.tied)
        return _report(ctx, names[chosen], LEGACY_TAG)

    survivors = history_survivors(ctx, policy)
    if len(survivors) == 1:
        return _report(ctx, names[survivors[0]], policy.value)

    ranking = ordered_ranking(ctx.original_ballots, ctx.seed)
    pick = max if for_election else min
    chosen = pick(survivors, key=lambda j: ranking.ranks[j])

    counts = preference_counts(ctx.original_ballots)
    needed_draw = any(
        j != chosen and np.array_equal(counts[j], counts[chosen]) for j in survivors
    )
    tag = policy.value + ("os" if needed_draw else "o")
    return _report(ctx, names[chosen], tag)


def _report(ctx: TieContext, chosen: str, tag: str) -> Tuple[str, str]:
    tied = ', '.join(ctx.original_ballots.candidates[j] for j in ctx.tied)
    action = "elect" if ctx.direction is TieDirection.FOR_ELECTION else "eliminate"
    logger.info(f"Tie between {tied} to {action}: chose {chosen} ({tag})")
    return chosen, tag
