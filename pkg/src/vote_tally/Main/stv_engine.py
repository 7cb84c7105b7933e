from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd

from vote_tally.Main.ballots import prepare_ranked
from vote_tally.Main.tiebreak import break_tie, ordered_ranking
from vote_tally.Models.models import (
    BallotMatrix,
    CountRecord,
    CountState,
    EventKind,
    QuotaPolicy,
    StvOptions,
    StvResult,
    TieBreak,
    TieContext,
    TieDirection,
)
from vote_tally.Utils.logging_utils import setup_logger, log_function_call
from vote_tally.Utils.random_draw import extremal

logger = setup_logger(__name__)


def compute_quota(current_total: float,
                  seats_left: int,
                  epsilon: float,
                  policy: QuotaPolicy = QuotaPolicy.ADAPTIVE,
                  initial_quota: Optional[float] = None) -> float:
    """Droop-style quota: the live vote mass over (L + 1), plus epsilon.

    The constant policy returns the first-count quota unchanged.
    """
    if policy is QuotaPolicy.CONSTANT and initial_quota is not None:
        return initial_quota
    return current_total / (seats_left + 1) + epsilon


def weighted_first_prefs(ranks: np.ndarray, weights: np.ndarray,
                         equal_ranking: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """Weighted first preferences u (N x M) and their column sums v.

    With equal ranking a ballot's weight is split evenly across all the
    candidates it ranks first.
    """
    firsts = (ranks == 1).astype(float)
    if equal_ranking:
        n_firsts = firsts.sum(axis=1)
        share = np.divide(weights, n_firsts, out=np.zeros_like(weights), where=n_firsts > 0)
        u = firsts * share[:, None]
    else:
        u = firsts * weights[:, None]
    return u, u.sum(axis=0)


def surplus_fraction(total: float, quota: float) -> float:
    if total <= 0 or total < quota:
        return 0.0
    return (total - quota) / total


def transfer_surplus(state: CountState, k: int, quota: float,
                     equal_ranking: bool = False, below_quota: bool = False) -> np.ndarray:
    """Re-weight the ballots currently at rank 1 on the elected candidate k.

    Ballots not at rank 1 on k keep their weight.
    """
    u = state.first_prefs
    fraction = 0.0 if below_quota else surplus_fraction(float(u[:, k].sum()), quota)
    on_k = state.ranks[:, k] == 1
    weights = state.weights.copy()
    if equal_ranking:
        weights[on_k] = u[on_k].sum(axis=1) - u[on_k, k] + u[on_k, k] * fraction
    else:
        weights[on_k] = u[on_k, k] * fraction
    state.weights = weights
    return weights


def retire_candidate(state: CountState, k: int, elected: bool,
                     equal_ranking: bool = False) -> CountState:
    """Remove k from the hopefuls and close the gap it leaves on every ballot."""
    ranks = state.ranks.copy()
    k_rank = ranks[:, k]
    holders = k_rank > 0
    shift = holders[:, None] & (ranks > k_rank[:, None])
    ranks[shift] -= 1
    ranks[:, k] = 0

    if equal_ranking and holders.any():
        # Ties below the retired rank can leave gaps; renumber from 1
        affected = ranks[holders]
        frame = pd.DataFrame(np.where(affected > 0, affected, np.nan))
        renumbered = frame.rank(axis=1, method='min', na_option='keep').to_numpy(dtype=float)
        ranks[holders] = np.nan_to_num(renumbered, nan=0.0)

    state.ranks = ranks
    state.hopeful.remove(k)
    if elected:
        state.elected.append(k)
        state.remaining_seats -= 1
    else:
        state.eliminated.append(k)
    return state


class _ReservedGate:
    """Election and elimination gates for g seats reserved to a marked group."""

    def __init__(self, options: StvOptions, candidates: Tuple[str, ...]):
        reserved = options.reserved
        self.seats = options.seats
        self.count = reserved.count if reserved else 0
        self.marked = {j for j, name in enumerate(candidates) if reserved and name in reserved.members}

    def _unmarked_elected(self, state: CountState) -> int:
        return sum(1 for j in state.elected if j not in self.marked)

    def electable(self, state: CountState) -> List[int]:
        if not self.count or self._unmarked_elected(state) < self.seats - self.count:
            return list(state.hopeful)
        marked = [j for j in state.hopeful if j in self.marked]
        return marked or list(state.hopeful)

    def eliminable(self, state: CountState) -> List[int]:
        if not self.count:
            return list(state.hopeful)
        marked_in_play = sum(1 for j in state.hopeful + state.elected if j in self.marked)
        if marked_in_play <= self.count or self._unmarked_elected(state) >= self.seats - self.count:
            unmarked = [j for j in state.hopeful if j not in self.marked]
            if unmarked:
                return unmarked
        return list(state.hopeful)


class StvCounter:
    """Runs one STV count over validated ballots."""

    def __init__(self, ballots: BallotMatrix, options: StvOptions):
        self.logger = setup_logger(__name__)
        self.ballots = ballots
        self.options = options
        self.candidates = ballots.candidates
        self.gate = _ReservedGate(options, self.candidates)
        self.history: List[np.ndarray] = []
        self.records: List[CountRecord] = []
        self.tie_breaks: List[TieBreak] = []
        # Transfers produced by the previous count, shown as "c-trans"
        self.inbound: Dict[str, float] = {}
        self.inbound_exhausted = 0.0

        ranks = np.nan_to_num(ballots.rows, nan=0.0)
        n_ballots, n_candidates = ranks.shape
        self.state = CountState(
            hopeful=list(range(n_candidates)),
            elected=[],
            eliminated=[],
            remaining_seats=options.seats,
            ranks=ranks,
            weights=np.ones(n_ballots),
            first_prefs=np.zeros_like(ranks),
        )
        self.initial_quota = n_ballots / (options.seats + 1) + options.epsilon

    def steps(self) -> Iterator[CountRecord]:
        """Run the count one event at a time, yielding each count's record."""
        while self.state.remaining_seats > 0:
            self._count()
            yield self.records[-1]

    def run(self) -> None:
        for _ in self.steps():
            pass

    def _resolve(self, tied: List[int], direction: TieDirection) -> Tuple[int, Optional[str]]:
        if len(tied) == 1:
            return tied[0], None
        ctx = TieContext(
            tied=tuple(tied),
            history=np.vstack(self.history),
            original_ballots=self.ballots,
            direction=direction,
            seed=self.options.seed,
            equal_ranking=self.options.equal_ranking,
        )
        name, tag = break_tie(ctx, self.options.ties, legacy=self.options.legacy_ties)
        self.tie_breaks.append(TieBreak(
            count=self.state.count,
            direction=direction,
            tied=tuple(self.candidates[j] for j in tied),
            chosen=name,
            tag=tag,
        ))
        return self.candidates.index(name), tag

    def _count(self) -> None:
        state = self.state
        options = self.options
        state.count += 1

        u, v = weighted_first_prefs(state.ranks, state.weights, options.equal_ranking)
        state.first_prefs = u
        quota = compute_quota(float(v.sum()), state.remaining_seats, options.epsilon,
                              options.quota_policy, self.initial_quota)
        row = np.full(len(self.candidates), np.nan)
        row[state.hopeful] = v[state.hopeful]
        self.history.append(row)
        totals = {self.candidates[j]: float(v[j]) for j in state.hopeful}

        # Only the leader is considered for election; a gated leader falls through to elimination
        electable = self.gate.electable(state)
        leaders = extremal(v, state.hopeful, maximize=True)
        allowed = [j for j in leaders if j in electable and v[j] >= quota]
        below_quota = False
        if allowed:
            k, tag = self._resolve(allowed, TieDirection.FOR_ELECTION)
            elected = True
        elif len(state.hopeful) == state.remaining_seats:
            k, tag = self._resolve(extremal(v, electable, maximize=True), TieDirection.FOR_ELECTION)
            elected = True
            below_quota = True
        else:
            pool = self.gate.eliminable(state)
            k, tag = self._resolve(extremal(v, pool, maximize=False), TieDirection.FOR_ELIMINATION)
            elected = False

        exhausted_before = state.exhausted_mass
        fraction = None
        if elected:
            fraction = 0.0 if below_quota else surplus_fraction(float(v[k]), quota)
            transfer_surplus(state, k, quota, options.equal_ranking, below_quota)
        retire_candidate(state, k, elected, options.equal_ranking)

        transfers, exhausted = self.inbound, self.inbound_exhausted
        if state.remaining_seats > 0:
            _, v_next = weighted_first_prefs(state.ranks, state.weights, options.equal_ranking)
            outgoing = -float(v[k] * fraction) if elected else -float(v[k])
            self.inbound = {
                name: (outgoing if j == k else float(v_next[j] - v[j]))
                for j, name in enumerate(self.candidates)
                if j == k or j in state.hopeful
            }
            self.inbound_exhausted = state.exhausted_mass - exhausted_before

        event = EventKind.ELECTED if elected else EventKind.ELIMINATED
        self.logger.debug(
            f"Count {state.count}: quota {quota:.6f}, {event.value} {self.candidates[k]} "
            f"with {v[k]:.6f}" + (" (below quota)" if below_quota else "")
        )
        self.records.append(CountRecord(
            count=state.count,
            quota=float(quota),
            totals=totals,
            transfers=transfers,
            event=event,
            candidate=self.candidates[k],
            tie_tag=tag,
            exhausted=float(exhausted),
            below_quota=below_quota,
            surplus_fraction=fraction,
        ))

    def complete_ranking(self) -> Tuple[str, ...]:
        """Elected in order, then remaining hopefuls by final total, then eliminated in reverse."""
        state = self.state
        final = self.history[-1] if self.history else np.zeros(len(self.candidates))
        remaining = list(state.hopeful)
        if remaining:
            ranking = ordered_ranking(self.ballots, self.options.seed)
            remaining.sort(key=lambda j: (-np.nan_to_num(final[j]), -ranking.ranks[j]))
        order = state.elected + remaining + state.eliminated[::-1]
        return tuple(self.candidates[j] for j in order)


@log_function_call(logger)
def count_stv(ballots: BallotMatrix, options: StvOptions = StvOptions()) -> StvResult:
    """Single transferable vote over ranked ballots.

    Each count elects the leading hopeful if it reaches the quota and
    otherwise eliminates the trailing one, until every seat is filled.
    """
    options.validate(ballots.candidates)
    valid, report = prepare_ranked(ballots, options.equal_ranking)

    counter = StvCounter(valid, options)
    counter.run()

    elected = tuple(valid.candidates[j] for j in counter.state.elected)
    eliminated = tuple(valid.candidates[j] for j in counter.state.eliminated)
    logger.info(f"STV elected {', '.join(elected)} in {counter.state.count} counts")
    return StvResult(
        candidates=valid.candidates,
        elected=elected,
        eliminated=eliminated,
        counts=tuple(counter.records),
        complete_ranking=counter.complete_ranking(),
        validation=report,
        options=options,
        ballots=valid,
        tie_breaks=tuple(counter.tie_breaks),
    )


def complete_ranking(result: StvResult) -> Tuple[str, ...]:
    return result.complete_ranking


def stv_summary(result: StvResult) -> pd.DataFrame:
    """Count table as a frame: Quota and one row per candidate.

    Each count column ("2") is preceded by the transfers that produced it
    ("2-trans"); a candidate's cells are NaN once it is no longer hopeful.
    """
    columns: Dict[str, Dict[str, float]] = {}
    for record in result.counts:
        if record.transfers:
            columns[f"{record.count}-trans"] = dict(record.transfers)
        column = {'Quota': record.quota}
        column.update(record.totals)
        columns[str(record.count)] = column
    index = ['Quota'] + list(result.candidates)
    return pd.DataFrame(columns, index=index, dtype=float)
