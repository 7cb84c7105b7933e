# models.py
import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np
import pandas as pd

from vote_tally.Configs.config import config
from vote_tally.Models.errors import BallotError, ConfigError


class BallotKind(enum.Enum):
    RANKED = "ranked"
    INDICATOR = "indicator"
    SCORE = "score"


class ValidationMode(enum.Enum):
    STRICT_RANKED = "strict_ranked"
    EQUAL_RANKED = "equal_ranked"
    INDICATOR_SINGLE = "indicator_single"
    INDICATOR_MULTI = "indicator_multi"
    SCORE = "score"


class QuotaPolicy(enum.Enum):
    ADAPTIVE = "adaptive"
    CONSTANT = "constant"


class TiePolicy(enum.Enum):
    FORWARDS = "f"
    BACKWARDS = "b"


class TieDirection(enum.Enum):
    FOR_ELECTION = "for_election"
    FOR_ELIMINATION = "for_elimination"


class Method(enum.Enum):
    PLURALITY = "plurality"
    APPROVAL = "approval"
    SCORE = "score"
    TWO_ROUND = "tworound"
    CONDORCET = "condorcet"
    STV = "stv"


class OutputFormat(enum.Enum):
    MARKDOWN = "markdown"
    JSON = "json"


class EventKind(enum.Enum):
    ELECTED = "elected"
    ELIMINATED = "eliminated"


class PlotKind(enum.Enum):
    COUNT_EVOLUTION = "count_evolution"
    ALL_PREFERENCES = "all_preferences"
    JOINT_FIRST_SECOND_COUNTS = "joint_first_second_counts"
    JOINT_FIRST_SECOND_PROPORTIONS = "joint_first_second_proportions"


@dataclass(frozen=True, eq=False)
class BallotMatrix:
    """N x M table of ranks, scores or 0/1 marks. Missing entries are NaN.

    Column order is the ballot-paper order and is kept by every transform.
    The underlying array is read-only.
    """
    candidates: Tuple[str, ...]
    rows: np.ndarray
    kind: BallotKind = BallotKind.RANKED

    def __post_init__(self):
        candidates = tuple(str(name).strip() for name in self.candidates)
        if not candidates:
            raise BallotError("a ballot matrix needs at least one candidate")
        if any(name == '' for name in candidates):
            raise BallotError("candidate names must be nonempty")
        duplicates = sorted({name for name in candidates if candidates.count(name) > 1})
        if duplicates:
            raise BallotError(f"duplicate candidate names: {', '.join(duplicates)}")

        rows = np.array(self.rows, dtype=float, copy=True)
        if rows.size == 0:
            rows = rows.reshape(0, len(candidates))
        if rows.ndim != 2 or rows.shape[1] != len(candidates):
            raise BallotError(
                f"ballot rows must have {len(candidates)} entries, got shape {rows.shape}"
            )
        if np.isinf(rows).any():
            raise BallotError("ballot entries must be finite")

        present = rows[~np.isnan(rows)]
        if self.kind is BallotKind.RANKED and (present <= 0).any():
            raise BallotError("ranks must be positive numbers")
        if self.kind is BallotKind.INDICATOR:
            if np.isnan(rows).any():
                rows = np.nan_to_num(rows, nan=0.0)
            if not np.isin(rows, (0.0, 1.0)).all():
                raise BallotError("indicator entries must be 0 or 1")

        rows.setflags(write=False)
        object.__setattr__(self, 'candidates', candidates)
        object.__setattr__(self, 'rows', rows)

    @property
    def n_ballots(self) -> int:
        return self.rows.shape[0]

    @property
    def n_candidates(self) -> int:
        return self.rows.shape[1]

    @property
    def present(self) -> np.ndarray:
        """Boolean mask of entries that carry a preference."""
        if self.kind is BallotKind.INDICATOR:
            return self.rows == 1.0
        return ~np.isnan(self.rows)

    def index_of(self, name: str) -> int:
        try:
            return self.candidates.index(name)
        except ValueError:
            raise BallotError(f"unknown candidate: {name}") from None

    def select_rows(self, mask: np.ndarray) -> "BallotMatrix":
        return BallotMatrix(self.candidates, self.rows[np.asarray(mask)], self.kind)

    def as_kind(self, kind: BallotKind) -> "BallotMatrix":
        """Reinterpret the same numbers as another ballot kind."""
        return BallotMatrix(self.candidates, self.rows, kind)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=list(self.candidates))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BallotMatrix):
            return NotImplemented
        return (
            self.candidates == other.candidates
            and self.kind is other.kind
            and self.rows.shape == other.rows.shape
            and bool(np.array_equal(self.rows, other.rows, equal_nan=True))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"BallotMatrix(kind={self.kind.value}, ballots={self.n_ballots}, "
            f"candidates={list(self.candidates)})"
        )


@dataclass(frozen=True)
class ValidationReport:
    valid_count: int
    invalid_count: int
    invalid_rows: Tuple[Tuple[int, str], ...] = ()
    corrected_rows: Tuple[int, ...] = ()
    valid_mask: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def n_ballots(self) -> int:
        return self.valid_count + self.invalid_count

    def to_dict(self) -> Dict:
        return {
            'valid': self.valid_count,
            'invalid': self.invalid_count,
            'invalid_rows': [{'row': row, 'reason': reason} for row, reason in self.invalid_rows],
            'corrected_rows': list(self.corrected_rows),
        }


@dataclass(frozen=True)
class ReservedSeats:
    """g seats reserved for the marked candidate group."""
    count: int
    members: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(str(m).strip() for m in self.members))


def validate_seats(seats: int, n_candidates: int, multi_winner: bool = True) -> None:
    """Multi-winner counts need 1 <= m < M; single-seat counts also accept M = 1."""
    upper = n_candidates - 1 if multi_winner else max(n_candidates - 1, 1)
    if seats < 1 or seats > upper:
        raise ConfigError(
            f"number of seats must be between 1 and {max(upper, 1)} "
            f"for {n_candidates} candidates, got {seats}"
        )


def validate_reserved(reserved: Optional[ReservedSeats], seats: int, candidates: Tuple[str, ...]) -> None:
    if reserved is None:
        return
    if not 0 < reserved.count <= seats:
        raise ConfigError(
            f"reserved seats must be between 1 and the number of seats ({seats}), "
            f"got {reserved.count}"
        )
    unknown = sorted(reserved.members - set(candidates))
    if unknown:
        raise ConfigError(f"reserved group names unknown candidates: {', '.join(unknown)}")
    if len(reserved.members) < reserved.count:
        raise ConfigError(
            f"{reserved.count} reserved seats cannot be filled from "
            f"{len(reserved.members)} marked candidates"
        )


@dataclass(frozen=True)
class ElectionConfig:
    seats: int = 1
    epsilon: float = config.DEFAULT_EPSILON
    quota_policy: QuotaPolicy = QuotaPolicy.ADAPTIVE
    ties: TiePolicy = TiePolicy.FORWARDS
    equal_ranking: bool = False
    reserved: Optional[ReservedSeats] = None
    seed: int = config.DEFAULT_SEED
    larger_wins: bool = False
    fill_score: Optional[float] = None
    complete_ranking: bool = False
    legacy_ties: bool = False

    def validate(self, candidates: Tuple[str, ...], multi_winner: bool = True) -> None:
        validate_seats(self.seats, len(candidates), multi_winner)
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        validate_reserved(self.reserved, self.seats, candidates)


@dataclass(frozen=True)
class TieDraw:
    """A seeded uniform draw among tied candidates."""
    purpose: str
    tied: Tuple[str, ...]
    chosen: Tuple[str, ...]

    def to_dict(self) -> Dict:
        return {'purpose': self.purpose, 'tied': list(self.tied), 'chosen': list(self.chosen)}


@dataclass(frozen=True)
class TallyResult:
    method: Method
    candidates: Tuple[str, ...]
    totals: Tuple[float, ...]
    elected: Tuple[str, ...]
    seats: int
    validation: ValidationReport
    larger_wins: bool = True
    tie_draws: Tuple[TieDraw, ...] = ()
    seed: int = config.DEFAULT_SEED

    @property
    def valid_count(self) -> int:
        return self.validation.valid_count

    @property
    def invalid_count(self) -> int:
        return self.validation.invalid_count

    @property
    def totals_by_candidate(self) -> Dict[str, float]:
        return dict(zip(self.candidates, self.totals))

    @property
    def total_sum(self) -> float:
        return float(sum(self.totals))

    @property
    def display_order(self) -> Tuple[str, ...]:
        """Descending support, ties in ballot-paper order."""
        sign = -1.0 if self.larger_wins else 1.0
        order = sorted(range(len(self.candidates)), key=lambda j: (sign * self.totals[j], j))
        return tuple(self.candidates[j] for j in order)


@dataclass(frozen=True)
class TwoRoundResult:
    candidates: Tuple[str, ...]
    first_totals: Tuple[float, ...]
    first_percent: Tuple[float, ...]
    finalists: Tuple[str, ...]
    runoff_totals: Tuple[float, ...]
    runoff_percent: Tuple[float, ...]
    elected: Tuple[str, ...]
    exhausted_count: int
    validation: ValidationReport
    ballots: BallotMatrix = field(repr=False, compare=False)
    tie_draws: Tuple[TieDraw, ...] = ()
    seed: int = config.DEFAULT_SEED

    method = Method.TWO_ROUND
    seats = 1

    @property
    def valid_count(self) -> int:
        return self.validation.valid_count

    @property
    def invalid_count(self) -> int:
        return self.validation.invalid_count

    @property
    def decided_in_first_round(self) -> bool:
        return len(self.finalists) == 1


@dataclass(frozen=True, eq=False)
class PairwiseMatrix:
    """wins[i][j] = 1 iff candidate i beats candidate j head-to-head."""
    candidates: Tuple[str, ...]
    wins: np.ndarray
    preferences: np.ndarray = field(repr=False)

    @property
    def totals(self) -> Tuple[int, ...]:
        return tuple(int(t) for t in self.wins.sum(axis=1))

    @property
    def winner(self) -> Optional[str]:
        m = len(self.candidates)
        for j, total in enumerate(self.totals):
            if total == m - 1:
                return self.candidates[j]
        return None

    @property
    def loser(self) -> Optional[str]:
        m = len(self.candidates)
        if m < 2:
            return None
        losses = self.wins.sum(axis=0)
        for j in range(m):
            if losses[j] == m - 1:
                return self.candidates[j]
        return None

    def to_dict(self) -> Dict:
        return {
            'candidates': list(self.candidates),
            'wins': self.wins.astype(int).tolist(),
            'preferences': self.preferences.astype(int).tolist(),
            'totals': list(self.totals),
            'winner': self.winner,
            'loser': self.loser,
        }


@dataclass(frozen=True)
class CondorcetResult:
    matrix: PairwiseMatrix
    rounds: Tuple[PairwiseMatrix, ...]
    winner: Optional[str]
    loser: Optional[str]
    runoff: bool
    validation: ValidationReport
    ballots: BallotMatrix = field(repr=False, compare=False)

    method = Method.CONDORCET
    seats = 1

    @property
    def candidates(self) -> Tuple[str, ...]:
        return self.matrix.candidates

    @property
    def elected(self) -> Tuple[str, ...]:
        return (self.winner,) if self.winner else ()

    @property
    def valid_count(self) -> int:
        return self.validation.valid_count

    @property
    def invalid_count(self) -> int:
        return self.validation.invalid_count


@dataclass(frozen=True)
class OrderedRanking:
    """Elimination order from preference counts: rank 1 is eliminated first."""
    candidates: Tuple[str, ...]
    ranks: Tuple[int, ...]
    sampled: Tuple[bool, ...]

    def rank_of(self, name: str) -> int:
        return self.ranks[self.candidates.index(name)]

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.candidates, self.ranks))


@dataclass(frozen=True, eq=False)
class TieContext:
    """Everything the tie-breaking cascade needs.

    tied holds column indices into original_ballots; history has one row per
    completed count (count 1 first) with NaN for candidates no longer hopeful.
    """
    tied: Tuple[int, ...]
    history: np.ndarray
    original_ballots: BallotMatrix
    direction: TieDirection
    seed: int = config.DEFAULT_SEED
    equal_ranking: bool = False

    def __post_init__(self):
        history = np.atleast_2d(np.asarray(self.history, dtype=float))
        if len(set(self.tied)) < 2:
            raise ConfigError("a tie needs at least two candidates")
        if history.shape[0] < 1:
            raise ConfigError("a tie needs at least one completed count")
        object.__setattr__(self, 'tied', tuple(int(j) for j in self.tied))
        object.__setattr__(self, 'history', history)


@dataclass(frozen=True)
class TieBreak:
    count: int
    direction: TieDirection
    tied: Tuple[str, ...]
    chosen: str
    tag: str

    def to_dict(self) -> Dict:
        return {
            'count': self.count,
            'direction': self.direction.value,
            'tied': list(self.tied),
            'chosen': self.chosen,
            'tag': self.tag,
        }


@dataclass
class CountState:
    """Mutable state of one STV count; private to the engine."""
    hopeful: List[int]
    elected: List[int]
    eliminated: List[int]
    remaining_seats: int
    ranks: np.ndarray
    weights: np.ndarray
    first_prefs: np.ndarray
    count: int = 0

    @property
    def exhausted_mass(self) -> float:
        """Weight held by ballots with no remaining preference."""
        rankless = ~(self.ranks > 0).any(axis=1)
        return float(self.weights[rankless].sum())


@dataclass(frozen=True)
class CountRecord:
    count: int
    quota: float
    totals: Dict[str, float]
    transfers: Dict[str, float]
    event: EventKind
    candidate: str
    tie_tag: Optional[str] = None
    exhausted: float = 0.0
    below_quota: bool = False
    surplus_fraction: Optional[float] = None

    def to_dict(self) -> Dict:
        return {
            'count': self.count,
            'quota': self.quota,
            'totals': dict(self.totals),
            'transfers': dict(self.transfers),
            'event': self.event.value,
            'candidate': self.candidate,
            'tie_tag': self.tie_tag,
            'exhausted': self.exhausted,
            'below_quota': self.below_quota,
            'surplus_fraction': self.surplus_fraction,
        }


@dataclass(frozen=True)
class StvOptions:
    seats: int = 1
    epsilon: float = config.DEFAULT_EPSILON
    quota_policy: QuotaPolicy = QuotaPolicy.ADAPTIVE
    equal_ranking: bool = False
    ties: TiePolicy = TiePolicy.FORWARDS
    reserved: Optional[ReservedSeats] = None
    seed: int = config.DEFAULT_SEED
    complete_ranking: bool = False
    legacy_ties: bool = False

    @classmethod
    def from_config(cls, election: ElectionConfig) -> "StvOptions":
        return cls(
            seats=election.seats,
            epsilon=election.epsilon,
            quota_policy=election.quota_policy,
            equal_ranking=election.equal_ranking,
            ties=election.ties,
            reserved=election.reserved,
            seed=election.seed,
            complete_ranking=election.complete_ranking,
            legacy_ties=election.legacy_ties,
        )

    def validate(self, candidates: Tuple[str, ...]) -> None:
        validate_seats(self.seats, len(candidates), multi_winner=True)
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        validate_reserved(self.reserved, self.seats, candidates)

    def to_dict(self) -> Dict:
        return {
            'seats': self.seats,
            'epsilon': self.epsilon,
            'quota_policy': self.quota_policy.value,
            'equal_ranking': self.equal_ranking,
            'ties': self.ties.value,
            'reserved': None if self.reserved is None else {
                'count': self.reserved.count,
                'members': sorted(self.reserved.members),
            },
            'seed': self.seed,
            'complete_ranking': self.complete_ranking,
            'legacy_ties': self.legacy_ties,
        }


@dataclass(frozen=True)
class StvResult:
    candidates: Tuple[str, ...]
    elected: Tuple[str, ...]
    eliminated: Tuple[str, ...]
    counts: Tuple[CountRecord, ...]
    complete_ranking: Tuple[str, ...]
    validation: ValidationReport
    options: StvOptions
    ballots: BallotMatrix = field(repr=False, compare=False)
    tie_breaks: Tuple[TieBreak, ...] = ()

    method = Method.STV

    @property
    def seats(self) -> int:
        return self.options.seats

    @property
    def valid_count(self) -> int:
        return self.validation.valid_count

    @property
    def invalid_count(self) -> int:
        return self.validation.invalid_count

    @property
    def corrected_rows(self) -> Tuple[int, ...]:
        return self.validation.corrected_rows

    @property
    def reserved_members(self) -> FrozenSet[str]:
        reserved = self.options.reserved
        return reserved.members if reserved is not None else frozenset()


@dataclass(frozen=True)
class RunSpec:
    input_path: str
    method: Method
    separator: str = config.DEFAULT_SEPARATOR
    election: ElectionConfig = field(default_factory=ElectionConfig)
    output_format: OutputFormat = OutputFormat.MARKDOWN
    digits: int = config.DEFAULT_DIGITS
    plots_dir: Optional[str] = None
    ranks_as_approval: Optional[FrozenSet[int]] = None
    runoff: bool = False


@dataclass(frozen=True, eq=False)
class PlotDataset:
    kind: PlotKind
    frame: pd.DataFrame
