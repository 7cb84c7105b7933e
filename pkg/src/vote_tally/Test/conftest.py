import pytest

from vote_tally.Models import datasets
from vote_tally.Views.ballot_file_handler import write_ballots


@pytest.fixture
def food():
    return datasets.food_election()


@pytest.fixture
def faculty():
    return datasets.faculty()


@pytest.fixture
def ballot_file(tmp_path):
    """Write a BallotMatrix to a CSV file and return its path."""
    def _write(ballots, name="ballots.csv", separator=","):
        path = tmp_path / name
        write_ballots(ballots, str(path), separator)
        return str(path)
    return _write
