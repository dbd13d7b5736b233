# modules/workflows/base_workflow.py

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from ..boxed_symbols import Decomposition, decomposition_from_blocks, parse_blocks, render_decomposition
from ..errors import InvalidBlockError, InvalidParameterError, UnknownSelectorError
from ..report_console import ReportConsole
from ..run_config import OutputFormat, RunConfig
from ..scenario_enumerator import enumerate_decompositions


@dataclass
class WorkflowResult:
    """Artifact text plus the exit status it should be reported with."""

    artifact: str
    status: int = 0


class BaseWorkflow(ABC):
    """
    Abstract base class for command workflows.
    Provides the shared selector resolution and a standardized execute interface.
    """

    def __init__(self, config: RunConfig, console: Optional[ReportConsole] = None):
        """
        Initialize the workflow.

        :param config: Resolved run configuration.
        :param console: Console for verbose tables.
        """
        self.config = config
        self.console = console or ReportConsole(verbose=config.verbose)
        self.logger = logging.getLogger(self.__class__.__name__)

    @abstractmethod
    async def execute(self) -> WorkflowResult:
        """
        Run the workflow.

        :return: The emitted artifact and its exit status.
        """
        pass

    @property
    def output_format(self) -> OutputFormat:
        return self.config.output_format

    def require_n(self) -> int:
        if self.config.n is None:
            raise InvalidParameterError(f"--n is required for '{self.config.command.value}'.")
        return self.config.n

    def resolve_decomposition(self) -> Decomposition:
        """
        Resolve --index (0-based into the canonical enumeration, default 0) or --blocks.
        Unresolvable selectors report the valid ones for this N.
        """
        n = self.require_n()
        catalog = enumerate_decompositions(n)
        valid = [f"{i}: {render_decomposition(d)}" for i, d in enumerate(catalog)]

        if self.config.blocks is not None:
            try:
                decomposition = decomposition_from_blocks(n, parse_blocks(self.config.blocks))
            except InvalidBlockError as e:
                raise UnknownSelectorError(f"Block list '{self.config.blocks}' is not a decomposition: {e}", valid)
        else:
            index = 0 if self.config.index is None else self.config.index
            if not 0 <= index < len(catalog):
                raise UnknownSelectorError(f"Index {index} is out of range for N={n}.", valid)
            decomposition = catalog[index]

        self.logger.info(f"Selected decomposition {render_decomposition(decomposition)} (K={decomposition.k}).")
        return decomposition
