from typing import List, Optional, Sequence, Tuple

import numpy as np

from vote_tally.Configs.config import config


class SeededDraw:
    """Uniform draws among tied candidates, replayable from a seed."""

    def __init__(self, seed: int = config.DEFAULT_SEED):
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)

    def choose(self, items: Sequence[int], k: int = 1) -> List[int]:
        """Pick k distinct items, returned in the order they were drawn."""
        items = list(items)
        if k >= len(items):
            return [items[i] for i in self.rng.permutation(len(items))]
        picked = self.rng.choice(len(items), size=k, replace=False)
        return [items[i] for i in picked]

    def permutation(self, n: int) -> np.ndarray:
        return self.rng.permutation(n)


def is_tied(a: float, b: float) -> bool:
    return abs(a - b) <= config.TIE_TOLERANCE


def extremal(values: Sequence[float], indices: Sequence[int], maximize: bool) -> List[int]:
    """Indices whose value is within tolerance of the max (or min)."""
    if not indices:
        return []
    picked = [values[j] for j in indices]
    target = max(picked) if maximize else min(picked)
    return [j for j in indices if is_tied(values[j], target)]


def top_k_with_draw(
    values: Sequence[float],
    k: int,
    maximize: bool,
    draw: SeededDraw,
    eligible: Optional[Sequence[int]] = None,
) -> Tuple[List[int], List[int], List[int]]:
    """Select k indices with the best values, drawing among ties at the cut.

    Returns (selected, tied_at_cut, drawn). The selection is ordered best
    first; tied_at_cut and drawn are empty when no draw was needed.
    """
    pool = list(range(len(values))) if eligible is None else list(eligible)
    sign = -1.0 if maximize else 1.0
    ordered = sorted(pool, key=lambda j: (sign * values[j], j))
    if k >= len(ordered):
        return ordered, [], []

    cut_value = values[ordered[k - 1]]
    above = [j for j in ordered if not is_tied(values[j], cut_value) and sign * values[j] < sign * cut_value]
    at_cut = [j for j in ordered if is_tied(values[j], cut_value)]
    needed = k - len(above)
    if needed == len(at_cut):
        return above + at_cut, [], []
    drawn = draw.choose(at_cut, needed)
    return above + drawn, at_cut, drawn
