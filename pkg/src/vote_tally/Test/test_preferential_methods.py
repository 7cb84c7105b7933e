import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings

from vote_tally.Main.preferential_methods import condorcet, count_two_round, pairwise_matrix
from vote_tally.Models import datasets
from vote_tally.Models.errors import ConfigError
from vote_tally.Models.models import BallotMatrix
from vote_tally.Test.strategies import complete_elections, strict_elections


class TestTwoRound:
    def test_food_election3(self):
        result = count_two_round(datasets.food_election3())
        assert result.first_totals == (4, 2, 8, 1, 1)
        assert result.first_percent == pytest.approx((25.0, 12.5, 50.0, 6.25, 6.25))
        assert result.finalists == ("Chocolate", "Oranges")
        assert result.runoff_totals == (6, 0, 8, 0, 0)
        assert result.runoff_percent == pytest.approx((100 * 6 / 14, 0, 100 * 8 / 14, 0, 0))
        assert result.exhausted_count == 2
        assert result.elected == ("Chocolate",)
        assert not result.decided_in_first_round

    def test_majority_wins_outright(self, food):
        result = count_two_round(food)
        assert result.decided_in_first_round
        assert result.elected == ("Chocolate",)
        assert result.finalists == ("Chocolate",)
        assert result.exhausted_count == 8

    def test_needs_two_candidates(self):
        with pytest.raises(ConfigError):
            count_two_round(BallotMatrix(("A",), [[1]]))

    @settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    @given(strict_elections(min_candidates=2, max_candidates=6, max_ballots=40))
    def test_matches_restricted_plurality(self, ballots):
        rows = ballots.rows
        first = (rows == 1).sum(axis=0)
        order = np.argsort(-first, kind='stable')
        leader = order[0]
        if first[leader] > ballots.n_ballots / 2:
            assert count_two_round(ballots).elected == (ballots.candidates[leader],)
            return
        assume(len(order) < 3 or first[order[1]] != first[order[2]])
        a, b = order[0], order[1]
        ranks = np.where(np.isnan(rows), np.inf, rows)
        for_a = int((ranks[:, a] < ranks[:, b]).sum())
        for_b = int((ranks[:, b] < ranks[:, a]).sum())
        assume(for_a != for_b)
        expected = ballots.candidates[a] if for_a > for_b else ballots.candidates[b]
        result = count_two_round(ballots)
        assert result.elected == (expected,)
        assert result.exhausted_count == ballots.n_ballots - for_a - for_b


class TestPairwise:
    def test_food_matrix(self, food):
        matrix = pairwise_matrix(food)
        assert matrix.totals == (2, 0, 4, 3, 1)
        assert matrix.winner == "Chocolate"
        assert matrix.loser == "Pears"

    def test_faculty_matrix(self, faculty):
        matrix = pairwise_matrix(faculty)
        assert matrix.totals == (0, 3, 2, 3, 1)
        assert matrix.winner is None
        assert matrix.loser == "Cauchy"

    @settings(max_examples=150, deadline=None)
    @given(strict_elections(max_candidates=6, max_ballots=30))
    def test_matches_brute_force(self, ballots):
        m = ballots.n_candidates
        prefer = np.zeros((m, m), dtype=int)
        for row in ballots.rows:
            for i in range(m):
                for j in range(m):
                    ri, rj = row[i], row[j]
                    if not np.isnan(ri) and (np.isnan(rj) or ri < rj):
                        prefer[i, j] += 1
        matrix = pairwise_matrix(ballots)
        assert np.array_equal(matrix.preferences, prefer)
        assert np.array_equal(matrix.wins, (prefer > prefer.T).astype(int))

    @settings(max_examples=150, deadline=None)
    @given(complete_elections())
    def test_reversing_every_ballot_transposes_the_wins(self, ballots):
        reversed_rows = ballots.n_candidates + 1 - ballots.rows
        flipped = BallotMatrix(ballots.candidates, reversed_rows)
        assert np.array_equal(pairwise_matrix(flipped).wins, pairwise_matrix(ballots).wins.T)


class TestCondorcet:
    def test_food_winner(self, food):
        result = condorcet(food)
        assert result.winner == "Chocolate"
        assert result.loser == "Pears"
        assert result.elected == ("Chocolate",)
        assert len(result.rounds) == 1

    def test_faculty_has_no_winner(self, faculty):
        result = condorcet(faculty)
        assert result.winner is None
        assert result.elected == ()
        assert result.loser == "Cauchy"

    def test_faculty_runoff(self, faculty):
        result = condorcet(faculty, runoff=True)
        assert result.winner == "Nightingale"
        assert result.rounds[1].candidates == ("Gauss", "Nightingale")
        assert result.matrix.winner is None
        assert result.loser == "Cauchy"
