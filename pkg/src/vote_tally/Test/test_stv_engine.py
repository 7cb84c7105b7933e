import numpy as np
import pytest

from vote_tally.Main.stv_engine import (
    compute_quota,
    count_stv,
    retire_candidate,
    stv_summary,
    surplus_fraction,
    transfer_surplus,
    weighted_first_prefs,
)
from vote_tally.Models import datasets
from vote_tally.Models.errors import ConfigError
from vote_tally.Models.models import (
    BallotMatrix,
    CountState,
    EventKind,
    QuotaPolicy,
    ReservedSeats,
    StvOptions,
    TiePolicy,
)

THREE = 5e-4
TWO = 5e-3
ELECTED = EventKind.ELECTED
ELIMINATED = EventKind.ELIMINATED


def events(result):
    return [(r.count, r.event, r.candidate) for r in result.counts]


def state_for(ranks, weights=None):
    ranks = np.array(ranks, dtype=float)
    n_ballots, n_candidates = ranks.shape
    return CountState(
        hopeful=list(range(n_candidates)), elected=[], eliminated=[], remaining_seats=1,
        ranks=ranks, weights=np.ones(n_ballots) if weights is None else np.array(weights, dtype=float),
        first_prefs=np.zeros_like(ranks),
    )


class TestCountSteps:
    def test_quota(self):
        assert compute_quota(20, 2, 0.001) == pytest.approx(20 / 3 + 0.001)
        assert compute_quota(10, 1, 0.001, QuotaPolicy.CONSTANT, initial_quota=7.0) == 7.0

    def test_first_preferences_split_on_equal_ranks(self):
        u, v = weighted_first_prefs(np.array([[1, 1, 2], [0, 1, 2]], dtype=float), np.ones(2), True)
        assert u[0].tolist() == [0.5, 0.5, 0.0]
        assert v.tolist() == [0.5, 1.5, 0.0]
        _, strict = weighted_first_prefs(np.array([[1, 1, 2]], dtype=float), np.ones(1), False)
        assert strict.tolist() == [1.0, 1.0, 0.0]

    def test_surplus_fraction(self):
        assert surplus_fraction(12, 6) == 0.5
        assert surplus_fraction(5, 6) == 0.0
        assert surplus_fraction(0, 0) == 0.0

    def test_transfer_only_touches_ballots_on_the_elected(self):
        state = state_for([[1, 2, 0], [1, 0, 2], [2, 1, 0]])
        state.first_prefs, _ = weighted_first_prefs(state.ranks, state.weights)
        weights = transfer_surplus(state, 0, quota=1.0)
        assert weights.tolist() == [0.5, 0.5, 1.0]

    def test_retire_closes_the_gap(self):
        state = retire_candidate(state_for([[2, 1, 3], [1, 0, 2]]), 1, elected=True)
        assert state.ranks.tolist() == [[1, 0, 2], [1, 0, 2]]
        assert state.elected == [1]
        assert state.hopeful == [0, 2]
        assert state.remaining_seats == 0

    def test_retire_renumbers_ties_with_equal_ranking(self):
        base = retire_candidate(state_for([[1, 3, 3]]), 0, elected=False)
        assert base.ranks.tolist() == [[0, 2, 2]]
        equal = retire_candidate(state_for([[1, 3, 3]]), 0, elected=False, equal_ranking=True)
        assert equal.ranks.tolist() == [[0, 1, 1]]
        assert equal.eliminated == [0]


class TestFoodElection:
    @pytest.fixture
    def result(self, food):
        return count_stv(food, StvOptions(seats=2))

    def test_events(self, result):
        assert events(result) == [
            (1, ELECTED, "Chocolate"),
            (2, ELIMINATED, "Pears"),
            (3, ELIMINATED, "Sweets"),
            (4, ELECTED, "Oranges"),
        ]
        assert result.elected == ("Chocolate", "Oranges")
        assert result.eliminated == ("Pears", "Sweets")

    def test_quotas(self, result):
        assert [r.quota for r in result.counts] == pytest.approx([6.668, 6.667, 6.667, 5.278], abs=THREE)

    def test_count_table(self, result):
        table = stv_summary(result)
        assert list(table.columns) == ["1", "2-trans", "2", "3-trans", "3", "4-trans", "4"]
        assert table.loc["Chocolate", "1"] == 12
        assert table.loc["Chocolate", "2-trans"] == pytest.approx(-5.332, abs=THREE)
        assert table.loc["Strawberries", "2-trans"] == pytest.approx(3.555, abs=THREE)
        assert table.loc["Sweets", "2-trans"] == pytest.approx(1.777, abs=THREE)
        assert table.loc["Oranges", "3-trans"] == pytest.approx(2)
        assert table.loc["Sweets", "4-trans"] == pytest.approx(-2.777, abs=THREE)
        assert table.loc["Strawberries", "4"] == pytest.approx(4.555, abs=THREE)
        assert np.isnan(table.loc["Chocolate", "2"])

    def test_complete_ranking(self, result):
        assert result.complete_ranking == ("Chocolate", "Oranges", "Strawberries", "Sweets", "Pears")

    def test_transfers_balance_with_exhausted(self, result):
        for record in result.counts[1:]:
            assert sum(record.transfers.values()) + record.exhausted == pytest.approx(0, abs=1e-9)
        assert result.counts[3].exhausted == pytest.approx(2.777, abs=THREE)

    def test_constant_quota(self, food):
        result = count_stv(food, StvOptions(seats=2, quota_policy=QuotaPolicy.CONSTANT))
        assert all(r.quota == pytest.approx(20 / 3 + 0.001) for r in result.counts)
        assert result.elected[0] == "Chocolate"


class TestEqualPreferences:
    def test_food_election2(self):
        result = count_stv(datasets.food_election2(), StvOptions(seats=2, equal_ranking=True))
        table = stv_summary(result)
        assert table.loc["Chocolate", "1"] == pytest.approx(10.5)
        assert table.loc["Strawberries", "1"] == pytest.approx(2.5)
        assert table.loc["Strawberries", "2-trans"] == pytest.approx(2.372, abs=THREE)
        assert table.loc["Sweets", "2-trans"] == pytest.approx(1.460, abs=THREE)
        assert result.counts[-1].quota == pytest.approx(5.437, abs=THREE)
        assert result.elected == ("Chocolate", "Oranges")

    def test_equal_preferences_are_invalid_without_the_option(self):
        result = count_stv(datasets.food_election2(), StvOptions(seats=2))
        assert result.invalid_count == 3
        assert result.valid_count == 17

    def test_faculty2(self):
        result = count_stv(datasets.faculty2(), StvOptions(seats=2, equal_ranking=True))
        assert result.corrected_rows == (1, 4, 9, 10)
        assert result.ballots.rows[0].tolist() == [3, 3, 5, 1, 1]
        first = result.counts[0].totals
        assert [first[name] for name in datasets.FACULTY_CANDIDATES] == pytest.approx(
            [0, 2.25, 2.25, 3.75, 1.75], abs=TWO)
        table = stv_summary(result)
        assert table.loc["Nightingale", "2-trans"] == pytest.approx(-0.42, abs=TWO)
        record = result.counts[1]
        gained = sum(v for name, v in record.transfers.items() if name != "Nightingale")
        assert gained + record.exhausted == pytest.approx(-record.transfers["Nightingale"])


class TestFaculty:
    def test_two_seats(self, faculty):
        result = count_stv(faculty, StvOptions(seats=2))
        table = stv_summary(result)
        assert result.counts[0].quota == pytest.approx(3.33, abs=TWO)
        assert [table.loc["Gauss", c] for c in ("1", "2", "3", "4")] == pytest.approx(
            [1, 2.33, 2.33, 3.67], abs=TWO)
        assert events(result) == [
            (1, ELECTED, "Nightingale"),
            (2, ELIMINATED, "Cauchy"),
            (3, ELIMINATED, "Poisson"),
            (4, ELECTED, "Gauss"),
        ]
        assert result.complete_ranking == ("Nightingale", "Gauss", "Laplace", "Poisson", "Cauchy")

    def test_reserved_seat(self, faculty):
        reserved = ReservedSeats(1, frozenset({"Laplace", "Poisson", "Cauchy"}))
        result = count_stv(faculty, StvOptions(seats=2, reserved=reserved))
        table = stv_summary(result)
        assert result.counts[1].event is ELIMINATED
        assert result.counts[1].candidate == "Gauss"
        assert table.loc["Gauss", "3-trans"] == pytest.approx(-2.33, abs=TWO)
        assert table.loc["Laplace", "3-trans"] == pytest.approx(1.67, abs=TWO)
        assert table.loc["Laplace", "3"] == pytest.approx(4.67, abs=TWO)
        assert table.loc["Poisson", "3-trans"] == pytest.approx(0.67, abs=TWO)
        assert table.loc["Poisson", "3"] == pytest.approx(2.00, abs=TWO)
        assert table.loc["Cauchy", "3"] == pytest.approx(0, abs=TWO)
        assert result.elected == ("Nightingale", "Laplace")
        assert result.reserved_members == {"Laplace", "Poisson", "Cauchy"}

    def test_gated_leader_is_eliminated_even_above_quota(self):
        # U1 takes the only unreserved seat; U2 then leads above quota but cannot be elected
        nan = np.nan
        rows = ([[1, nan, nan, nan, nan]] * 14 + [[nan, 1, nan, nan, nan]] * 11
                + [[nan, nan, 1, nan, nan]] * 10 + [[nan, nan, nan, 1, nan]] * 4
                + [[nan, nan, nan, nan, 1]] * 3)
        ballots = BallotMatrix(("U1", "U2", "M1", "M2", "M3"), np.array(rows, dtype=float))
        reserved = ReservedSeats(2, frozenset({"M1", "M2", "M3"}))
        result = count_stv(ballots, StvOptions(seats=3, reserved=reserved))

        second = result.counts[1]
        assert second.totals["U2"] > second.totals["M1"] >= second.quota
        assert (second.event, second.candidate) == (ELIMINATED, "U2")
        assert events(result) == [
            (1, ELECTED, "U1"),
            (2, ELIMINATED, "U2"),
            (3, ELECTED, "M1"),
            (4, ELECTED, "M2"),
        ]
        assert not any(r.below_quota for r in result.counts)

    def test_single_seat_tie_tags(self, faculty):
        result = count_stv(faculty, StvOptions(seats=1))
        assert (result.counts[1].candidate, result.counts[1].tie_tag) == ("Poisson", "fo")
        assert (result.counts[3].candidate, result.counts[3].tie_tag) == ("Laplace", "f")
        last = result.counts[-1]
        assert (last.event, last.candidate) == (ELECTED, "Nightingale")
        assert last.totals["Nightingale"] == pytest.approx(10)
        assert last.quota == pytest.approx(5.001)
        assert [t.tag for t in result.tie_breaks] == ["fo", "f"]

    def test_single_seat_backwards(self, faculty):
        result = count_stv(faculty, StvOptions(seats=1, ties=TiePolicy.BACKWARDS))
        assert (result.counts[3].candidate, result.counts[3].tie_tag) == ("Laplace", "b")
        assert result.elected == ("Nightingale",)


class TestEdgeCases:
    def test_elected_below_quota(self):
        ballots = BallotMatrix(("A", "B", "C"), [[1, np.nan, np.nan]] * 3 + [[np.nan, 1, np.nan]] * 2
                               + [[np.nan, np.nan, 1]])
        result = count_stv(ballots, StvOptions(seats=2, quota_policy=QuotaPolicy.CONSTANT))
        last = result.counts[-1]
        assert result.elected == ("A", "B")
        assert last.below_quota
        assert last.surplus_fraction == 0.0
        assert last.totals["B"] < last.quota

    def test_seats_must_be_below_candidates(self, food):
        with pytest.raises(ConfigError):
            count_stv(food, StvOptions(seats=9))
        with pytest.raises(ConfigError):
            count_stv(food, StvOptions(seats=5))

    def test_epsilon_must_be_positive(self, food):
        with pytest.raises(ConfigError):
            count_stv(food, StvOptions(seats=2, epsilon=0))

    def test_reserved_group_must_name_candidates(self, faculty):
        with pytest.raises(ConfigError):
            count_stv(faculty, StvOptions(seats=2, reserved=ReservedSeats(1, frozenset({"Euler"}))))
        with pytest.raises(ConfigError):
            count_stv(faculty, StvOptions(seats=2, reserved=ReservedSeats(3, frozenset({"Gauss"}))))

    def test_legacy_ties(self, faculty):
        result = count_stv(faculty, StvOptions(seats=1, legacy_ties=True))
        assert {t.tag for t in result.tie_breaks} == {"l"}
