import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vote_tally.Main.ballots import threshold_indicator
from vote_tally.Main.baseline_methods import count_approval, count_plurality, count_score, score_range
from vote_tally.Models import datasets
from vote_tally.Models.errors import BallotError, ConfigError
from vote_tally.Models.models import BallotKind, BallotMatrix, Method


def marks(rows, names=("A", "B")):
    return BallotMatrix(names, rows, BallotKind.INDICATOR)


class TestPlurality:
    def test_food_first_preferences(self, food):
        result = count_plurality(threshold_indicator(food, {1}))
        assert result.method is Method.PLURALITY
        assert result.totals_by_candidate == {
            "Oranges": 4, "Pears": 2, "Chocolate": 12, "Strawberries": 1, "Sweets": 1,
        }
        assert result.elected == ("Chocolate",)
        assert result.display_order == ("Chocolate", "Oranges", "Pears", "Strawberries", "Sweets")
        assert result.total_sum == result.valid_count == 20

    def test_single_candidate(self):
        result = count_plurality(marks([[1], [1]], names=("Solo",)))
        assert result.elected == ("Solo",)

    def test_tie_is_a_replayable_seeded_draw(self):
        ballots = marks([[1, 0]] * 3 + [[0, 1]] * 3)
        first = count_plurality(ballots, seed=7)
        again = count_plurality(ballots, seed=7)
        assert first.elected == again.elected
        assert len(first.tie_draws) == 1
        assert first.tie_draws[0].tied == ("A", "B")
        assert first.tie_draws[0].chosen == first.elected

    def test_seats_out_of_range(self, food):
        with pytest.raises(ConfigError):
            count_plurality(threshold_indicator(food, {1}), seats=5)

    def test_needs_indicator_ballots(self, food):
        with pytest.raises(BallotError):
            count_plurality(food)

    def test_only_supported_candidates_are_elected(self):
        result = count_plurality(marks([[1, 0, 0]] * 2, names=("A", "B", "C")), seats=2)
        assert result.elected == ("A",)


class TestApproval:
    def test_food_top_three_ranks(self, food):
        result = count_approval(threshold_indicator(food, {1, 2, 3}), seats=2)
        assert result.totals == (6, 2, 12, 9, 5)
        assert result.total_sum == 34
        assert set(result.elected) == {"Chocolate", "Strawberries"}

    def test_everyone_approves_everyone(self):
        ballots = marks([[1, 1, 1]] * 4, names=("A", "B", "C"))
        result = count_approval(ballots, seats=2, seed=3)
        assert result.totals == (4, 4, 4)
        assert len(result.elected) == 2
        assert result.elected == count_approval(ballots, seats=2, seed=3).elected

    def test_single_ballot(self):
        assert count_approval(marks([[0, 1]])).elected == ("B",)

    def test_approval_is_score_with_zero_one_scores(self, food):
        approvals = threshold_indicator(food, {1, 2, 3})
        as_scores = count_score(approvals.as_kind(BallotKind.SCORE), seats=2, larger_wins=True,
                                fill=0, max_score=1)
        assert as_scores.totals == count_approval(approvals, seats=2).totals
        assert set(as_scores.elected) == set(count_approval(approvals, seats=2).elected)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=30),
           st.randoms(use_true_random=False))
    def test_winners_do_not_depend_on_ballot_order(self, rows, rnd):
        shuffled = list(rows)
        rnd.shuffle(shuffled)
        names = ("A", "B", "C", "D")
        before = count_approval(marks(rows, names), seats=2)
        after = count_approval(marks(shuffled, names), seats=2)
        assert before.totals == after.totals
        assert before.elected == after.elected
        assert before.total_sum == sum(sum(row) for row in rows)


class TestScore:
    def test_food_smaller_wins(self):
        result = count_score(datasets.food_scores(), seats=2, fill=6)
        assert result.totals == (92, 110, 60, 83, 99)
        assert result.total_sum == 444
        assert set(result.elected) == {"Chocolate", "Strawberries"}
        assert result.display_order[:2] == ("Chocolate", "Strawberries")

    def test_unscored_column_takes_fill(self):
        ballots = BallotMatrix(("A", "B"), [[1, np.nan]] * 20, BallotKind.SCORE)
        assert count_score(ballots, fill=6).totals == (20, 120)

    def test_larger_wins_on_negated_scores(self):
        negated = BallotMatrix(datasets.FOOD_CANDIDATES, -datasets.food_scores().rows, BallotKind.SCORE)
        result = count_score(negated, seats=2, larger_wins=True, fill=-6, min_score=-6, max_score=0)
        assert set(result.elected) == {"Chocolate", "Strawberries"}

    def test_fill_outside_range(self):
        with pytest.raises(ConfigError, match="outside the score range"):
            count_score(datasets.food_scores(), fill=6, max_score=5)

    def test_smaller_wins_needs_a_range(self):
        with pytest.raises(ConfigError):
            score_range(datasets.food_scores(), larger_wins=False, fill=None)

    def test_range_defaults(self):
        assert score_range(datasets.food_scores(), False, 6) == (6, 0, 6)
        assert score_range(datasets.food_scores(), False, None, max_score=10) == (10, 0, 10)
        assert score_range(datasets.food_scores(), True, None) == (0, 0, 2)

    def test_out_of_range_ballot_is_invalid(self):
        ballots = BallotMatrix(("A", "B"), [[1, 9], [1, 2]], BallotKind.SCORE)
        result = count_score(ballots, fill=6)
        assert result.invalid_count == 1
        assert result.totals == (1, 2)
