# modules/workflows/matrix_workflows.py

import numpy as np

from ..boxed_symbols import format_blocks, render_decomposition
from ..errors import InvalidParameterError
from ..hamiltonian_builder import assemble_full, closed_form_spectrum
from ..matrix_codec import SCHEMA_VERSION, dumps, encode_complex_list, encode_float, matrix_to_dict, render_matrix_text, spectrum_csv
from ..run_config import OutputFormat
from ..spectrum_handler import corridor_scan_async, csv_header, ep_distance, match_spectra, spectrum
from .base_workflow import BaseWorkflow, WorkflowResult


class MatrixWorkflow(BaseWorkflow):
    """Shared plumbing for commands that act on one assembled Hamiltonian."""

    def require_t(self) -> float:
        if self.config.t is None:
            raise InvalidParameterError(f"--t is required for '{self.config.command.value}'.")
        return self.config.t

    def assemble(self):
        decomposition = self.resolve_decomposition()
        h = assemble_full(decomposition.n, decomposition, self.require_t(), self.config.shift)
        return decomposition, h


class BuildWorkflow(MatrixWorkflow):
    async def execute(self) -> WorkflowResult:
        decomposition, h = self.assemble()
        self.logger.info(f"Built N={h.n} Hamiltonian for {render_decomposition(decomposition)} at t={h.t}.")

        if self.output_format is OutputFormat.TEXT:
            return WorkflowResult(render_matrix_text(h.entries))
        if self.output_format is OutputFormat.CSV:
            return WorkflowResult(spectrum_csv([repr(encode_float(x)) for x in row] for row in h.entries))
        return WorkflowResult(dumps(matrix_to_dict(h)))


class SpectrumWorkflow(MatrixWorkflow):
    async def execute(self) -> WorkflowResult:
        decomposition, h = self.assemble()
        report = spectrum(h, self.config.tolerances)
        self.console.display_spectra([report])

        # closed form is real only inside the corridor; compare there
        deviation = None
        if h.t < 1.0:
            deviation = match_spectra(report.eigenvalues, closed_form_spectrum(decomposition, h.t, h.shift))
            self.logger.info(f"Deviation from the closed-form levels: {deviation:.3e}.")
        if not report.all_real:
            self.logger.warning(f"Spectrum at t={h.t} is not real (max |Im E| = {report.max_imag:.3e}).")

        if self.output_format is OutputFormat.TEXT:
            lines = [f"{v.real:.12g} {v.imag:+.12g}i" for v in report.eigenvalues]
            lines.append(f"all_real: {'true' if report.all_real else 'false'}")
            lines.append(f"clusters: {report.cluster_sizes}")
            return WorkflowResult("\n".join(lines) + "\n")
        if self.output_format is OutputFormat.CSV:
            return WorkflowResult(spectrum_csv([csv_header(h.n), report.csv_row()]))

        document = report.to_dict()
        document.update(
            {
                "n": h.n,
                "blocks": format_blocks(decomposition),
                "shift": encode_float(h.shift),
                "ep_distance": encode_float(ep_distance(report, h.shift)),
                "closed_form_deviation": None if deviation is None else encode_float(deviation),
                "cluster_centers": encode_complex_list(report.cluster_centers()),
            }
        )
        return WorkflowResult(dumps(document))


class SweepWorkflow(MatrixWorkflow):
    """Corridor scan over --t-grid, grid points solved concurrently."""

    async def execute(self) -> WorkflowResult:
        decomposition = self.resolve_decomposition()
        if not self.config.t_grid:
            raise InvalidParameterError("--t-grid is required for 'sweep'.")
        reports = await corridor_scan_async(
            decomposition,
            self.config.t_grid,
            shift=self.config.shift,
            tolerances=self.config.tolerances,
            max_workers=self.config.max_workers,
        )
        lost = [r.t for r in reports if not r.all_real]
        self.logger.info(f"Swept {len(reports)} grid points for {render_decomposition(decomposition)}.")
        if lost:
            self.logger.warning(f"Reality lost at t = {lost}.")
        self.console.display_spectra(reports)

        if self.output_format is OutputFormat.CSV:
            return WorkflowResult(spectrum_csv([csv_header(decomposition.n)] + [r.csv_row() for r in reports]))
        if self.output_format is OutputFormat.TEXT:
            lines = [
                f"t={r.t:.6g}  real={'yes' if r.all_real else 'no'}  "
                f"max_imag={r.max_imag:.3e}  spread={float(np.ptp(r.eigenvalues.real)):.6g}"
                for r in reports
            ]
            return WorkflowResult("\n".join(lines) + "\n")

        document = {
            "schema_version": SCHEMA_VERSION,
            "n": decomposition.n,
            "blocks": format_blocks(decomposition),
            "shift": encode_float(self.config.shift),
            "reports": [r.to_dict() for r in reports],
        }
        return WorkflowResult(dumps(document))
