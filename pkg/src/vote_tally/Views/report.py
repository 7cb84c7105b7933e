from typing import Dict, Type

from vote_tally.Configs.config import config
from vote_tally.Models.models import OutputFormat
from vote_tally.Views.base_renderer import BaseRenderer, ElectionResult
from vote_tally.Views.json_renderer import JsonRenderer
from vote_tally.Views.markdown_renderer import MarkdownRenderer

RENDERERS: Dict[OutputFormat, Type[BaseRenderer]] = {
    OutputFormat.MARKDOWN: MarkdownRenderer,
    OutputFormat.JSON: JsonRenderer,
}


def render_report(result: ElectionResult,
                  digits: int = config.DEFAULT_DIGITS,
                  complete_ranking: bool = False,
                  output_format: OutputFormat = OutputFormat.MARKDOWN) -> str:
    """Render a finished count. Pure: the same result always gives the same text."""
    renderer = RENDERERS[output_format](digits, complete_ranking)
    return renderer.render(result)
