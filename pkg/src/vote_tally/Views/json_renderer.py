import json
import math
from typing import Any, Dict

import numpy as np

from vote_tally.Models.models import CondorcetResult, StvResult, TallyResult, TwoRoundResult
from vote_tally.Views.base_renderer import BaseRenderer


def _clean(value: Any) -> Any:
    """Make a value JSON-safe: numpy scalars become Python numbers, NaN becomes null."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return None
    return value


class JsonRenderer(BaseRenderer):
    """Machine-readable reports. Key order is fixed so output is reproducible."""

    def _document(self, result, config: Dict, counts, totals: Dict, tiebreaks, **extra) -> str:
        document = {
            'method': result.method.value,
            'config': config,
            'validation': result.validation.to_dict(),
            'counts': counts,
            'totals': totals,
            'elected': list(result.elected),
        }
        document.update(extra)
        document['tiebreaks'] = tiebreaks
        return json.dumps(_clean(document), indent=2) + "\n"

    def render_tally(self, result: TallyResult) -> str:
        config = {'seats': result.seats, 'larger_wins': result.larger_wins, 'seed': result.seed}
        return self._document(
            result, config, [], result.totals_by_candidate,
            [d.to_dict() for d in result.tie_draws],
        )

    def render_two_round(self, result: TwoRoundResult) -> str:
        counts = [
            {'round': 1, 'totals': dict(zip(result.candidates, result.first_totals)),
             'percent': dict(zip(result.candidates, result.first_percent))},
        ]
        if not result.decided_in_first_round:
            counts.append({
                'round': 2,
                'finalists': list(result.finalists),
                'totals': {name: result.runoff_totals[result.candidates.index(name)] for name in result.finalists},
                'percent': {name: result.runoff_percent[result.candidates.index(name)] for name in result.finalists},
                'exhausted': result.exhausted_count,
            })
        return self._document(
            result, {'seats': 1, 'seed': result.seed}, counts,
            dict(zip(result.candidates, result.first_totals)),
            [d.to_dict() for d in result.tie_draws],
        )

    def render_condorcet(self, result: CondorcetResult) -> str:
        counts = [matrix.to_dict() for matrix in result.rounds]
        return self._document(
            result, {'runoff': result.runoff}, counts,
            dict(zip(result.candidates, result.matrix.totals)), [],
            pairwise=result.matrix.to_dict(),
        )

    def render_stv(self, result: StvResult) -> str:
        last = result.counts[-1].totals if result.counts else {}
        extra = {}
        if self.complete_ranking or result.options.complete_ranking:
            extra['ranking'] = list(result.complete_ranking)
        return self._document(
            result, result.options.to_dict(), [record.to_dict() for record in result.counts],
            dict(last), [tie.to_dict() for tie in result.tie_breaks],
            **extra,
        )
