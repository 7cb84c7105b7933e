import os
from typing import Dict, List, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from vote_tally.Configs.config import config  # noqa: E402
from vote_tally.Main.ballots import has_equal_preferences  # noqa: E402
from vote_tally.Main.stv_engine import stv_summary  # noqa: E402
from vote_tally.Main.tiebreak import preference_frame  # noqa: E402
from vote_tally.Models.errors import PlotError  # noqa: E402
from vote_tally.Models.models import (  # noqa: E402
    BallotMatrix,
    CondorcetResult,
    PlotDataset,
    PlotKind,
    StvResult,
    TwoRoundResult,
)
from vote_tally.Utils.logging_utils import setup_logger, log_function_call  # noqa: E402

logger = setup_logger(__name__)

RankedResult = Union[StvResult, TwoRoundResult, CondorcetResult]

TITLES = {
    PlotKind.COUNT_EVOLUTION: "Evolution of candidates' votes over the counts",
    PlotKind.ALL_PREFERENCES: "Number of votes for each candidate and preference",
    PlotKind.JOINT_FIRST_SECOND_COUNTS: "Votes for each combination of first and second preferences",
    PlotKind.JOINT_FIRST_SECOND_PROPORTIONS: "Proportion of the first preference votes",
}


def count_evolution(result: StvResult) -> pd.DataFrame:
    """One row per count: every candidate's total while hopeful, plus the quota."""
    summary = stv_summary(result)
    counts = [column for column in summary.columns if not column.endswith("-trans")]
    frame = summary[counts].T
    frame = frame[list(result.candidates) + ['Quota']]
    frame.index = pd.Index([int(c) for c in counts], name='count')
    return frame


def joint_first_second(ballots: BallotMatrix) -> pd.DataFrame:
    """Entry (a, b) counts ballots with first preference a and second preference b."""
    rows = np.nan_to_num(ballots.rows, nan=0.0)
    first = (rows == 1).astype(int)
    second = (rows == 2).astype(int)
    index = pd.Index(ballots.candidates, name='first')
    return pd.DataFrame(first.T @ second, index=index, columns=list(ballots.candidates))


def joint_proportions(joint: pd.DataFrame, ballots: BallotMatrix) -> pd.DataFrame:
    firsts = (np.nan_to_num(ballots.rows, nan=0.0) == 1).sum(axis=0).astype(float)
    values = np.divide(joint.to_numpy(dtype=float), firsts[:, None],
                       out=np.zeros(joint.shape), where=firsts[:, None] > 0)
    return pd.DataFrame(values, index=joint.index, columns=joint.columns)


@log_function_call(logger)
def plot_datasets(result: RankedResult) -> List[PlotDataset]:
    """The datasets behind the count-evolution and preference plots.

    Count evolution only exists for STV results. Ballots with equal
    preferences have no well-defined first/second split and are refused.
    """
    if not isinstance(result, (StvResult, TwoRoundResult, CondorcetResult)):
        raise PlotError(f"plots need a ranked-ballot result, got {type(result).__name__}")
    ballots = result.ballots
    if has_equal_preferences(ballots):
        raise PlotError("plots cannot be produced when equal preferences are present")

    datasets = []
    if isinstance(result, StvResult):
        datasets.append(PlotDataset(PlotKind.COUNT_EVOLUTION, count_evolution(result)))
    joint = joint_first_second(ballots)
    datasets.extend([
        PlotDataset(PlotKind.ALL_PREFERENCES, preference_frame(ballots)),
        PlotDataset(PlotKind.JOINT_FIRST_SECOND_COUNTS, joint),
        PlotDataset(PlotKind.JOINT_FIRST_SECOND_PROPORTIONS, joint_proportions(joint, ballots)),
    ])
    return datasets


def _draw(dataset: PlotDataset, path: str) -> None:
    fig, ax = plt.subplots(figsize=(config.PLOT_SVG_WIDTH_INCHES, config.PLOT_SVG_HEIGHT_INCHES))
    frame = dataset.frame
    if dataset.kind is PlotKind.COUNT_EVOLUTION:
        for column in frame.columns:
            style = '--' if column == 'Quota' else '-'
            ax.plot(frame.index, frame[column], style, marker='o', label=column)
        ax.set_xlabel("Count")
        ax.set_ylabel("Votes")
        ax.set_xticks(list(frame.index))
        ax.legend(loc='best', fontsize=8)
    else:
        image = ax.imshow(frame.to_numpy(dtype=float), cmap='Blues', aspect='auto')
        ax.set_xticks(range(frame.shape[1]))
        ax.set_xticklabels(frame.columns, rotation=45, ha='right')
        ax.set_yticks(range(frame.shape[0]))
        ax.set_yticklabels(frame.index)
        ax.set_xlabel("Preference" if dataset.kind is PlotKind.ALL_PREFERENCES else "Second preference")
        fig.colorbar(image, ax=ax)
    ax.set_title(TITLES[dataset.kind], fontsize=11)
    fig.tight_layout()
    fig.savefig(path, format='svg')
    plt.close(fig)


@log_function_call(logger)
def emit_plots(result: RankedResult, directory: str,
               separator: str = config.DEFAULT_SEPARATOR) -> Dict[PlotKind, str]:
    """Write each dataset as a delimited file plus an SVG; returns the data file paths."""
    datasets = plot_datasets(result)
    written = {}
    try:
        os.makedirs(directory, exist_ok=True)
        for dataset in datasets:
            base = os.path.join(directory, dataset.kind.value)
            dataset.frame.to_csv(f"{base}.csv", sep=separator, lineterminator='\n')
            _draw(dataset, f"{base}.svg")
            written[dataset.kind] = f"{base}.csv"
            logger.info(f"Wrote {dataset.kind.value} to {base}.csv and {base}.svg")
    except OSError as e:
        raise PlotError(f"cannot write plots to {directory}: {e}") from e
    return written
