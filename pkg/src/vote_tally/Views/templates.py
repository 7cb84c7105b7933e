from decimal import ROUND_HALF_EVEN, ROUND_HALF_UP, Decimal
from typing import List, Optional, Sequence, Tuple

import numpy as np

from vote_tally.Models.models import Method

TITLES = {
    Method.PLURALITY: "Plurality voting",
    Method.APPROVAL: "Approval voting",
    Method.SCORE: "Score voting",
    Method.TWO_ROUND: "two-round-runoff voting",
    Method.CONDORCET: "Condorcet voting",
    Method.STV: "Single transferable vote",
}

LEFT, RIGHT, CENTER = "left", "right", "center"


class Templates:
    """Text pieces shared by the report renderers"""

    @staticmethod
    def banner(title: str) -> str:
        heading = f"Results of {title}"
        return f"{heading}\n{'=' * len(heading)}"

    @staticmethod
    def section(title: str) -> str:
        return f"{title}\n{'=' * len(title)}"

    @staticmethod
    def header_lines(items: Sequence[Tuple[str, object]]) -> str:
        """Label/value lines with the values right-aligned in one column.

        'Number of valid votes:   20' for small electorates.
        """
        values = [str(value) for _, value in items]
        width = 25 + max(len(v) for v in values)
        lines = []
        for (label, _), value in zip(items, values):
            gap = max(width - len(label) - len(value), 1)
            lines.append(f"{label}{' ' * gap}{value}")
        return "\n".join(lines)

    @staticmethod
    def elected(names: Sequence[str]) -> str:
        return f"Elected: {', '.join(names)}"

    @staticmethod
    def no_condorcet_winner() -> str:
        return "There is no condorcet winner (no candidate won over all other candidates)."

    @staticmethod
    def corrected_votes(rows: Sequence[int]) -> str:
        return f"Votes {', '.join(str(r) for r in rows)} were corrected to comply with the required format."

    @staticmethod
    def seeded_draw(purpose: str, tied: Sequence[str], chosen: Sequence[str], seed: int) -> str:
        return (f"Tie for {purpose} among {', '.join(tied)} "
                f"resolved by seeded draw (seed {seed}): {', '.join(chosen)}")

    @staticmethod
    def pipe_table(header: Sequence[str], rows: Sequence[Sequence[str]], aligns: Sequence[str]) -> str:
        """Pipe table with an alignment row, one cell of padding per side used."""
        widths = []
        for j, align in enumerate(aligns):
            longest = max([len(header[j])] + [len(row[j]) for row in rows])
            widths.append(longest + (2 if align == CENTER else 1))

        def cell(text: str, width: int, align: str) -> str:
            if align == LEFT:
                return text.ljust(width)
            if align == RIGHT:
                return text.rjust(width)
            return text.center(width)

        def rule(width: int, align: str) -> str:
            if align == LEFT:
                return ":" + "-" * (width - 1)
            if align == RIGHT:
                return "-" * (width - 1) + ":"
            return ":" + "-" * (width - 2) + ":"

        lines = ["|" + "|".join(cell(h, w, a) for h, w, a in zip(header, widths, aligns)) + "|",
                 "|" + "|".join(rule(w, a) for w, a in zip(widths, aligns)) + "|"]
        for row in rows:
            lines.append("|" + "|".join(cell(c, w, a) for c, w, a in zip(row, widths, aligns)) + "|")
        return "\n".join(lines)


def round_half_away(value: float, digits: int) -> Decimal:
    quantum = Decimal(1).scaleb(-digits)
    rounded = Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)
    return abs(rounded) if rounded == 0 else rounded


def format_percent(value: float, digits: int = 1) -> str:
    quantum = Decimal(1).scaleb(-digits)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_EVEN))


def format_column(values: Sequence[Optional[float]], digits: int) -> List[str]:
    """Format one table column; whole-number columns print without decimals.

    None and NaN become empty cells.
    """
    present = [v for v in values if v is not None and not np.isnan(v)]
    whole = all(float(v).is_integer() for v in present)
    cells = []
    for v in values:
        if v is None or np.isnan(v):
            cells.append("")
        elif whole:
            cells.append(str(int(v)) if v != 0 else "0")
        else:
            cells.append(str(round_half_away(v, digits)))
    return cells
