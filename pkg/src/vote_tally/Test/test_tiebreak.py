import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vote_tally.Main.tiebreak import (
    LEGACY_TAG,
    break_tie,
    history_survivors,
    ordered_ranking,
    preference_counts,
    preference_frame,
)
from vote_tally.Models.errors import BallotError, ConfigError
from vote_tally.Models.models import BallotKind, BallotMatrix, TieContext, TieDirection, TiePolicy
from vote_tally.Test.strategies import NAMES, count_histories, strict_elections

NA = np.nan
GAUSS, POISSON = 1, 4
ELIMINATE = TieDirection.FOR_ELIMINATION
ELECT = TieDirection.FOR_ELECTION


def context(ballots, history, direction=ELIMINATE, tied=(GAUSS, POISSON), seed=0):
    return TieContext(tied=tied, history=np.array(history, dtype=float),
                      original_ballots=ballots, direction=direction, seed=seed)


# Gauss and Poisson differ at counts 1 and 2 in opposite directions and tie at count 3
CROSSING = [
    [0, 2, 3, 5, 1],
    [NA, 1, 3, 5, 2],
    [NA, 3, 3, 5, 3],
]


class TestPreferenceCounts:
    def test_faculty_rows(self, faculty):
        counts = preference_counts(faculty)
        assert counts[GAUSS].tolist() == [1, 7, 0, 2, 0]
        assert counts[POISSON].tolist() == [1, 1, 4, 1, 3]
        assert counts.sum(axis=0).tolist() == [10] * 5

    def test_frame_labels(self, faculty):
        frame = preference_frame(faculty)
        assert list(frame.columns) == ["1", "2", "3", "4", "5"]
        assert frame.loc["Nightingale", "1"] == 5

    def test_needs_ranked_ballots(self, faculty):
        with pytest.raises(BallotError):
            preference_counts(faculty.as_kind(BallotKind.SCORE))


class TestOrderedRanking:
    def test_faculty(self, faculty):
        ranking = ordered_ranking(faculty)
        assert ranking.as_dict() == {
            "Cauchy": 1, "Poisson": 2, "Gauss": 3, "Laplace": 4, "Nightingale": 5,
        }
        assert not any(ranking.sampled)

    def test_identical_counts_are_sampled(self):
        ballots = BallotMatrix(("A", "B", "C"), [[1, 2, 3], [2, 1, 3]])
        ranking = ordered_ranking(ballots, seed=11)
        assert ranking.sampled == (True, True, False)
        assert ranking.rank_of("C") == 1
        assert sorted(ranking.ranks[:2]) == [2, 3]
        assert ranking == ordered_ranking(ballots, seed=11)

    @settings(max_examples=150, deadline=None)
    @given(strict_elections(max_candidates=6, max_ballots=30), st.data())
    def test_unsampled_candidates_keep_their_order_in_any_subset(self, ballots, data):
        ranking = ordered_ranking(ballots, seed=3)
        counts = preference_counts(ballots)
        clean = [j for j in range(ballots.n_candidates) if not ranking.sampled[j]]
        subset = data.draw(st.lists(st.sampled_from(clean), unique=True) if clean else st.just([]))
        by_rank = sorted(subset, key=lambda j: ranking.ranks[j])
        by_counts = sorted(subset, key=lambda j: tuple(counts[j]))
        assert by_rank == by_counts


def survivors(history, tied, direction=ELIMINATE):
    n_candidates = history.shape[1]
    ballots = BallotMatrix(NAMES[:n_candidates], [list(range(1, n_candidates + 1))])
    ctx = TieContext(tied=tuple(tied), history=history, original_ballots=ballots, direction=direction)
    return (set(history_survivors(ctx, TiePolicy.FORWARDS)),
            set(history_survivors(ctx, TiePolicy.BACKWARDS)))


class TestHistorySurvivors:
    @settings(max_examples=200, deadline=None)
    @given(count_histories(2), st.sampled_from([ELIMINATE, ELECT]))
    def test_two_way_ties_fail_under_both_policies_or_neither(self, history, direction):
        forwards, backwards = survivors(history, (0, 1), direction)
        assert (len(forwards) > 1) == (len(backwards) > 1)
        if len(forwards) > 1:
            assert forwards == backwards == {0, 1}

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=3, max_value=5).flatmap(count_histories), st.sampled_from([ELIMINATE, ELECT]))
    def test_a_tie_no_count_separates_survives_both_policies(self, history, direction):
        tied = tuple(range(history.shape[1]))
        forwards, backwards = survivors(history, tied, direction)
        assert (forwards == set(tied)) == (backwards == set(tied))

    def test_three_way_partial_narrowing_depends_on_direction(self):
        history = np.array([[1, 1, 2], [5, 5, 3], [6, 6, 6]], dtype=float)
        forwards, backwards = survivors(history, (0, 1, 2))
        assert forwards == {0, 1}
        assert backwards == {2}


class TestBreakTie:
    def test_forwards_uses_earliest_difference(self, faculty):
        assert break_tie(context(faculty, CROSSING), TiePolicy.FORWARDS) == ("Poisson", "f")

    def test_backwards_uses_latest_difference(self, faculty):
        assert break_tie(context(faculty, CROSSING), TiePolicy.BACKWARDS) == ("Gauss", "b")

    def test_election_takes_the_larger_total(self, faculty):
        assert break_tie(context(faculty, CROSSING, ELECT), TiePolicy.FORWARDS) == ("Gauss", "f")

    def test_ordered_stage_when_history_never_differs(self, faculty):
        history = [[0, 1, 3, 5, 1], [NA, 2.33, 3, 5, 2.33]]
        assert break_tie(context(faculty, history), TiePolicy.FORWARDS) == ("Poisson", "fo")
        assert break_tie(context(faculty, history), TiePolicy.BACKWARDS) == ("Poisson", "bo")
        assert break_tie(context(faculty, history, ELECT), TiePolicy.FORWARDS) == ("Gauss", "fo")

    def test_counts_where_a_tied_candidate_was_gone_are_skipped(self, faculty):
        history = [[0, NA, 3, 5, 4], [0, 2, 3, 5, 2]]
        assert break_tie(context(faculty, history), TiePolicy.FORWARDS) == ("Poisson", "fo")

    def test_sampled_ordering_is_tagged(self):
        ballots = BallotMatrix(("A", "B", "C"), [[1, 2, 3], [2, 1, 3]])
        ctx = context(ballots, [[1, 1, 0]], tied=(0, 1), seed=5)
        name, tag = break_tie(ctx, TiePolicy.BACKWARDS)
        assert tag == "bos"
        assert name in ("A", "B")
        assert break_tie(ctx, TiePolicy.BACKWARDS) == (name, tag)

    def test_legacy_uses_ballot_paper_position(self, faculty):
        assert break_tie(context(faculty, CROSSING), legacy=True) == ("Gauss", LEGACY_TAG)
        assert break_tie(context(faculty, CROSSING, ELECT), legacy=True) == ("Poisson", LEGACY_TAG)

    def test_context_needs_a_real_tie(self, faculty):
        with pytest.raises(ConfigError):
            context(faculty, CROSSING, tied=(GAUSS,))
