# base_renderer.py
from abc import ABC, abstractmethod
from typing import Union

from vote_tally.Configs.config import config
from vote_tally.Models.models import CondorcetResult, StvResult, TallyResult, TwoRoundResult
from vote_tally.Utils.logging_utils import setup_logger

ElectionResult = Union[TallyResult, TwoRoundResult, CondorcetResult, StvResult]


class BaseRenderer(ABC):
    """Turns a finished result into report text; one subclass per output format."""

    def __init__(self, digits: int = config.DEFAULT_DIGITS, complete_ranking: bool = False):
        self.logger = setup_logger(self.__class__.__name__)
        self.digits = digits
        self.complete_ranking = complete_ranking

    def render(self, result: ElectionResult) -> str:
        """Dispatch on the result type"""
        self.logger.debug(f"Rendering {result.method.value} result")
        if isinstance(result, StvResult):
            return self.render_stv(result)
        if isinstance(result, TwoRoundResult):
            return self.render_two_round(result)
        if isinstance(result, CondorcetResult):
            return self.render_condorcet(result)
        if isinstance(result, TallyResult):
            return self.render_tally(result)
        raise TypeError(f"cannot render {type(result).__name__}")

    @abstractmethod
    def render_tally(self, result: TallyResult) -> str:
        """Plurality, approval and score results"""
        pass

    @abstractmethod
    def render_two_round(self, result: TwoRoundResult) -> str:
        pass

    @abstractmethod
    def render_condorcet(self, result: CondorcetResult) -> str:
        pass

    @abstractmethod
    def render_stv(self, result: StvResult) -> str:
        pass
