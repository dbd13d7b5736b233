# modules/report_console.py

import logging
from typing import Iterable, Optional, Sequence

from rich.console import Console
from rich.table import Table

from .boxed_symbols import Decomposition, appendix_label, render_decomposition
from .spectrum_handler import SpectrumReport


class ReportConsole:
    """
    Renders results as rich tables on stderr when verbose mode is enabled.
    The machine-readable artifact is written elsewhere; this is for humans only.
    """

    def __init__(self, verbose: bool = False, console: Optional[Console] = None):
        """
        :param verbose: Flag to enable the tables.
        :param console: Target console; defaults to a stderr console.
        """
        self.verbose = verbose
        self.console = console or Console(stderr=True)
        self.logger = logging.getLogger(self.__class__.__name__)

    def display_decompositions(self, decompositions: Sequence[Decomposition]) -> None:
        if not self.verbose:
            return
        n = decompositions[0].n if decompositions else "?"
        table = Table(title=f"Decompositions of the N={n} diagonal", show_header=True, header_style="bold magenta")
        table.add_column("#", style="cyan", no_wrap=True)
        table.add_column("K", style="cyan")
        table.add_column("Boxed symbols", style="magenta")
        table.add_column("Half-set labels")
        for index, d in enumerate(decompositions):
            table.add_row(str(index), str(d.k), render_decomposition(d), appendix_label(d))
        self.console.print(table)

    def display_spectra(self, reports: Iterable[SpectrumReport]) -> None:
        if not self.verbose:
            return
        table = Table(title="Spectra", show_header=True, header_style="bold magenta")
        table.add_column("t", style="cyan", no_wrap=True)
        table.add_column("Real", style="magenta")
        table.add_column("max |Im E|")
        table.add_column("Clusters")
        for report in reports:
            t = "-" if report.t is None else f"{report.t:.4g}"
            table.add_row(t, "yes" if report.all_real else "no", f"{report.max_imag:.3e}", str(report.cluster_sizes))
        self.console.print(table)

    def display_summary(self, title: str, rows: Iterable[Sequence[str]]) -> None:
        if not self.verbose:
            return
        table = Table(title=title, show_header=True, header_style="bold magenta")
        table.add_column("Quantity", style="cyan", no_wrap=True)
        table.add_column("Value", style="magenta")
        for name, value in rows:
            table.add_row(str(name), str(value))
        self.console.print(table)
