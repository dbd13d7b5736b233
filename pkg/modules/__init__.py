# modules/__init__.py

from .boxed_symbols import BlockSpec, Decomposition, main_diagonal, parse_blocks, render_decomposition
from .hamiltonian_builder import HamiltonianMatrix, assemble_full, build_block, closed_form_spectrum
from .scenario_enumerator import brute_force_count, classify_by_multiplicity, count_scenarios, enumerate_decompositions
from .spectrum_handler import SpectrumReport, corridor_scan, spectrum

__all__ = [
    "BlockSpec",
    "Decomposition",
    "HamiltonianMatrix",
    "SpectrumReport",
    "assemble_full",
    "brute_force_count",
    "build_block",
    "classify_by_multiplicity",
    "closed_form_spectrum",
    "corridor_scan",
    "count_scenarios",
    "enumerate_decompositions",
    "main_diagonal",
    "parse_blocks",
    "render_decomposition",
    "spectrum",
]
