# modules/workflow_manager.py

import logging
import sys
from typing import Dict, Optional, TextIO, Type

from .errors import NumericError, UnknownSelectorError, ValidationError
from .report_console import ReportConsole
from .run_config import Command, RunConfig
from .workflows import (
    BaseWorkflow,
    BuildWorkflow,
    EnumerateWorkflow,
    JordanWorkflow,
    MetricWorkflow,
    ProbeWorkflow,
    SequenceCheckWorkflow,
    SpectrumWorkflow,
    SweepWorkflow,
    WorkflowResult,
)


class WorkflowManager:
    """
    Selects the workflow for a command and executes it.
    Converts toolkit errors into exit statuses; artifacts are returned, not written.
    """

    WORKFLOW_CLASSES: Dict[Command, Type[BaseWorkflow]] = {
        Command.ENUMERATE: EnumerateWorkflow,
        Command.BUILD: BuildWorkflow,
        Command.SPECTRUM: SpectrumWorkflow,
        Command.SWEEP: SweepWorkflow,
        Command.JORDAN: JordanWorkflow,
        Command.METRIC: MetricWorkflow,
        Command.PROBE: ProbeWorkflow,
        Command.OEIS_CHECK: SequenceCheckWorkflow,
    }

    def __init__(self, config: RunConfig, console: Optional[ReportConsole] = None):
        """
        Initialize the WorkflowManager.

        :param config: Resolved run configuration.
        :param console: Console for verbose tables.
        """
        self.config = config
        self.logger = logging.getLogger(self.__class__.__name__)
        self.workflow: BaseWorkflow = self._select_workflow(console)

    def _select_workflow(self, console: Optional[ReportConsole]) -> BaseWorkflow:
        workflow_class = self.WORKFLOW_CLASSES[self.config.command]
        self.logger.debug(f"Selected {workflow_class.__name__} for '{self.config.command.value}'.")
        return workflow_class(self.config, console)

    async def execute(self) -> WorkflowResult:
        """
        Executes the selected workflow.

        :return: Artifact and exit status; 1 for validation errors, 2 for numeric failures.
        """
        name = self.workflow.__class__.__name__
        self.logger.info(f"Executing '{self.config.command.value}' using '{name}'.")
        try:
            result = await self.workflow.execute()
        except UnknownSelectorError as e:
            self.logger.error(str(e))
            selectors = "\n".join(f"  {s}" for s in e.valid_selectors)
            print(f"Error: {e}\nValid selectors for N={self.config.n}:\n{selectors}", file=sys.stderr)
            return WorkflowResult("", e.exit_status)
        except ValidationError as e:
            self.logger.error(f"Validation error: {e}")
            print(f"Error: {e}", file=sys.stderr)
            return WorkflowResult("", e.exit_status)
        except NumericError as e:
            self.logger.error(f"Numeric failure: {e}")
            print(f"Error: {e}", file=sys.stderr)
            return WorkflowResult("", e.exit_status)
        self.logger.info(f"'{self.config.command.value}' completed with status {result.status}.")
        return result


async def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    """
    Execute one command and emit its artifact.

    :param config: Resolved run configuration.
    :param stream: Destination when no --output path is set; defaults to stdout.
    :return: Exit status (0 success, 1 validation error, 2 numeric failure).
    """
    result = await WorkflowManager(config).execute()
    if result.artifact:
        if config.output:
            try:
                with open(config.output, "w", encoding="utf-8", newline="") as file:
                    file.write(result.artifact)
            except OSError as e:
                logging.getLogger("WorkflowManager").error(f"Cannot write '{config.output}': {e}")
                return 1
        else:
            (stream or sys.stdout).write(result.artifact)
    return result.status
