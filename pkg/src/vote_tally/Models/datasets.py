"""Small elections used in the documentation and the golden tests."""
import numpy as np

from vote_tally.Models.models import BallotKind, BallotMatrix

NA = np.nan

FOOD_CANDIDATES = ("Oranges", "Pears", "Chocolate", "Strawberries", "Sweets")
FACULTY_CANDIDATES = ("Cauchy", "Gauss", "Laplace", "Nightingale", "Poisson")

_CHOC_STRAW = (NA, NA, 1, 2, NA)
_PEARS_ORANGES = (2, 1, NA, NA, NA)
_STRAW_ONLY = (NA, NA, NA, 1, NA)
_ORANGES_ONLY = (1, NA, NA, NA, NA)
_SWEETS_ONLY = (NA, NA, NA, NA, 1)
_CHOC_SWEETS = (NA, NA, 1, NA, 2)

_FOOD_ROWS = (
    _CHOC_STRAW,     # 1
    _CHOC_STRAW,     # 2
    _CHOC_STRAW,     # 3
    _PEARS_ORANGES,  # 4
    _STRAW_ONLY,     # 5
    _ORANGES_ONLY,   # 6
    _SWEETS_ONLY,    # 7
    _ORANGES_ONLY,   # 8
    _CHOC_STRAW,     # 9
    _CHOC_SWEETS,    # 10
    _ORANGES_ONLY,   # 11
    _CHOC_STRAW,     # 12
    _CHOC_STRAW,     # 13
    _CHOC_STRAW,     # 14
    _CHOC_SWEETS,    # 15
    _ORANGES_ONLY,   # 16
    _CHOC_SWEETS,    # 17
    _PEARS_ORANGES,  # 18
    _CHOC_SWEETS,    # 19
    _CHOC_STRAW,     # 20
)

_FACULTY_ROWS = (
    (3, 4, 5, 1, 2),
    (4, 1, 2, 3, 5),
    (4, 2, 1, 5, 3),
    (4, 2, 3, 1, 5),
    (4, 2, 1, 3, 5),
    (5, 2, 3, 1, 4),
    (4, 2, 3, 5, 1),
    (5, 2, 4, 1, 3),
    (5, 2, 4, 1, 3),
    (5, 4, 1, 2, 3),
)

# 1-based row -> replacement, giving ballots with equal preferences
_FACULTY2_CHANGES = {
    1: (2, 2, 3, 1, 1),
    4: (3, 1, 2, 1, 3),
    9: (4, 1, 3, 1, 2),
    10: (2, 1, 1, 1, 1),
}


def food_election() -> BallotMatrix:
    """Twenty voters ranking five foods; missing preferences are NaN."""
    return BallotMatrix(FOOD_CANDIDATES, np.array(_FOOD_ROWS, dtype=float))


def food_election2() -> BallotMatrix:
    """food_election with Chocolate and Strawberries ranked equal first on rows 1-3."""
    rows = np.array(_FOOD_ROWS, dtype=float)
    rows[0:3, FOOD_CANDIDATES.index("Strawberries")] = 1
    return BallotMatrix(FOOD_CANDIDATES, rows)


def food_election3() -> BallotMatrix:
    """food_election without rows 12-15 (16 ballots)."""
    rows = np.array(_FOOD_ROWS, dtype=float)
    keep = np.ones(len(rows), dtype=bool)
    keep[11:15] = False
    return BallotMatrix(FOOD_CANDIDATES, rows[keep])


def faculty() -> BallotMatrix:
    return BallotMatrix(FACULTY_CANDIDATES, np.array(_FACULTY_ROWS, dtype=float))


def faculty2() -> BallotMatrix:
    """faculty with equal preferences on rows 1, 4, 9 and 10."""
    rows = np.array(_FACULTY_ROWS, dtype=float)
    for row, replacement in _FACULTY2_CHANGES.items():
        rows[row - 1] = replacement
    return BallotMatrix(FACULTY_CANDIDATES, rows)


def food_scores() -> BallotMatrix:
    """food_election read as scores (smaller is better)."""
    return food_election().as_kind(BallotKind.SCORE)
