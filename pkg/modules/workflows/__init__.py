# modules/workflows/__init__.py

from .base_workflow import BaseWorkflow, WorkflowResult
from .certification_workflows import JordanWorkflow, MetricWorkflow, ProbeWorkflow
from .enumeration_workflows import EnumerateWorkflow, SequenceCheckWorkflow
from .matrix_workflows import BuildWorkflow, SpectrumWorkflow, SweepWorkflow

__all__ = [
    "BaseWorkflow",
    "BuildWorkflow",
    "EnumerateWorkflow",
    "JordanWorkflow",
    "MetricWorkflow",
    "ProbeWorkflow",
    "SequenceCheckWorkflow",
    "SpectrumWorkflow",
    "SweepWorkflow",
    "WorkflowResult",
]
