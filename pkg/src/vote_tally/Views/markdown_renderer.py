from typing import List, Sequence, Tuple

from vote_tally.Main.stv_engine import stv_summary
from vote_tally.Models.models import (
    CondorcetResult,
    EventKind,
    Method,
    PairwiseMatrix,
    StvResult,
    TallyResult,
    TwoRoundResult,
)
from vote_tally.Views.base_renderer import BaseRenderer
from vote_tally.Views.templates import (
    CENTER,
    LEFT,
    RIGHT,
    TITLES,
    Templates,
    format_column,
    format_percent,
)

MARK = "x"


class MarkdownRenderer(BaseRenderer):
    """Plain-text reports: a header block, pipe tables and an Elected footer."""

    def _header(self, title: str, valid: int, invalid: int, candidates: int, seats: int,
                extra: Sequence[Tuple[str, object]] = ()) -> str:
        items = [
            ("Number of valid votes:", valid),
            ("Number of invalid votes:", invalid),
            ("Number of candidates:", candidates),
            ("Number of seats:", seats),
        ] + list(extra)
        return f"{Templates.banner(title)}\n{Templates.header_lines(items)}"

    def render_tally(self, result: TallyResult) -> str:
        order = [result.candidates.index(name) for name in result.display_order]
        totals = format_column([result.totals[j] for j in order] + [result.total_sum], self.digits)
        rows = []
        for position, j in enumerate(order):
            name = result.candidates[j]
            rows.append([str(position + 1), name, totals[position], MARK if name in result.elected else ""])
        rows.append(["Sum", "", totals[-1], ""])

        parts = [
            self._header(TITLES[result.method], result.valid_count, result.invalid_count,
                         len(result.candidates), result.seats),
            Templates.pipe_table(["", "Candidate", "Total", "Elected"], rows, [LEFT, LEFT, RIGHT, CENTER]),
        ]
        parts.extend(Templates.seeded_draw(d.purpose, d.tied, d.chosen, result.seed) for d in result.tie_draws)
        parts.append(Templates.elected(result.elected))
        return "\n\n".join(parts) + "\n"

    def render_two_round(self, result: TwoRoundResult) -> str:
        n = len(result.candidates)
        first = format_column(list(result.first_totals) + [sum(result.first_totals)], self.digits)
        runoff = format_column(list(result.runoff_totals) + [sum(result.runoff_totals)], self.digits)
        first_pct = [format_percent(p) for p in result.first_percent]
        runoff_pct = [format_percent(p) for p in result.runoff_percent]
        rows = []
        for j, name in enumerate(result.candidates):
            rows.append([str(j + 1), name, first[j], first_pct[j], runoff[j], runoff_pct[j],
                         MARK if name in result.elected else ""])
        rows.append(["Sum", "", first[n], format_percent(sum(result.first_percent)),
                     runoff[n], format_percent(sum(result.runoff_percent)), ""])

        parts = [
            self._header(TITLES[Method.TWO_ROUND], result.valid_count, result.invalid_count, n, 1),
            Templates.pipe_table(
                ["", "Candidate", "Total", "Percent", "ROTotal", "ROPercent", "Elected"],
                rows,
                [LEFT, LEFT, RIGHT, RIGHT, RIGHT, RIGHT, CENTER],
            ),
        ]
        parts.extend(Templates.seeded_draw(d.purpose, d.tied, d.chosen, result.seed) for d in result.tie_draws)
        parts.append(Templates.elected(result.elected))
        return "\n\n".join(parts) + "\n"

    def _pairwise_table(self, matrix: PairwiseMatrix) -> str:
        winner, loser = matrix.winner, matrix.loser
        header = [""] + list(matrix.candidates) + ["Total"]
        aligns = [LEFT] + [RIGHT] * (len(matrix.candidates) + 1)
        if winner:
            header.append("Winner")
            aligns.append(CENTER)
        if loser:
            header.append("Loser")
            aligns.append(CENTER)
        rows = []
        for i, name in enumerate(matrix.candidates):
            row = [name] + [str(int(x)) for x in matrix.wins[i]] + [str(matrix.totals[i])]
            if winner:
                row.append(MARK if name == winner else "")
            if loser:
                row.append(MARK if name == loser else "")
            rows.append(row)
        return Templates.pipe_table(header, rows, aligns)

    def render_condorcet(self, result: CondorcetResult) -> str:
        parts = [
            self._header(TITLES[Method.CONDORCET], result.valid_count, result.invalid_count,
                         len(result.candidates), 1),
            self._pairwise_table(result.matrix),
        ]
        for matrix in result.rounds[1:]:
            parts.append(Templates.section(f"Runoff among {', '.join(matrix.candidates)}"))
            parts.append(self._pairwise_table(matrix))

        footer = []
        if result.matrix.winner:
            footer.append(f"Condorcet winner: {result.matrix.winner}")
        else:
            footer.append(Templates.no_condorcet_winner())
            if result.runoff:
                footer.append(f"Runoff winner: {result.winner}" if result.winner else "There is no runoff winner.")
        if result.loser:
            footer.append(f"Condorcet loser: {result.loser}")
        parts.append("\n".join(footer))
        return "\n\n".join(parts) + "\n"

    def render_stv(self, result: StvResult) -> str:
        options = result.options
        title = TITLES[Method.STV] + (" with equal preferences" if options.equal_ranking else "")
        extra = []
        if options.reserved is not None:
            extra = [("Number of reserved seats:", options.reserved.count),
                     ("Eligible for reserved seats:", len(options.reserved.members))]

        summary = stv_summary(result)
        marked = result.reserved_members
        labels = ["Quota"] + [f"{name}*" if name in marked else name for name in result.candidates]
        columns = [format_column(summary[column].tolist(), self.digits) for column in summary.columns]
        rows: List[List[str]] = [[label] + [col[i] for col in columns] for i, label in enumerate(labels)]

        position = {column: j for j, column in enumerate(summary.columns)}
        event_rows = {"Tie-breaks": [""] * len(columns), "Elected": [""] * len(columns),
                      "Eliminated": [""] * len(columns)}
        for record in result.counts:
            j = position[str(record.count)]
            row = "Elected" if record.event is EventKind.ELECTED else "Eliminated"
            event_rows[row][j] = record.candidate
            if record.tie_tag:
                event_rows["Tie-breaks"][j] = record.tie_tag
        if not any(event_rows["Tie-breaks"]):
            del event_rows["Tie-breaks"]
        rows.extend([label] + cells for label, cells in event_rows.items())

        parts = [
            self._header(title, result.valid_count, result.invalid_count,
                         len(result.candidates), result.seats, extra),
            Templates.pipe_table([""] + list(summary.columns), rows, [LEFT] + [RIGHT] * len(columns)),
        ]
        below = [r.candidate for r in result.counts if r.below_quota]
        if below:
            parts.append(f"Elected below quota: {', '.join(below)}")
        if self.complete_ranking or options.complete_ranking:
            parts.append(self._complete_ranking(result))
        parts.append(Templates.elected(result.elected))
        if result.corrected_rows:
            parts.append(Templates.corrected_votes(result.corrected_rows))
        return "\n\n".join(parts) + "\n"

    def _complete_ranking(self, result: StvResult) -> str:
        rows = [[str(rank), name, MARK if name in result.elected else ""]
                for rank, name in enumerate(result.complete_ranking, start=1)]
        table = Templates.pipe_table(["Rank", "Candidate", "Elected"], rows, [RIGHT, LEFT, CENTER])
        return f"{Templates.section('Complete Ranking')}\n\n{table}"
