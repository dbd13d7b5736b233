# modules/workflows/certification_workflows.py

from ..boxed_symbols import format_blocks
from ..certification import geometric_multiplicity, jordan_certificate, metric_certificate, splitting_exponent
from ..certification.splitting_probe import probe_document
from ..errors import CertificationError, InvalidParameterError
from ..hamiltonian_builder import assemble_full
from ..matrix_codec import dumps, encode_float, render_matrix_text, spectrum_csv
from ..run_config import OutputFormat
from .base_workflow import WorkflowResult
from .matrix_workflows import MatrixWorkflow

JORDAN_RESIDUAL_TOLERANCE = 1e-9
PROBE_RELATIVE_TOLERANCE = 0.2


class JordanWorkflow(MatrixWorkflow):
    """
    Certifies the EPN structure at t = 1: geometric multiplicity equal to K
    and an explicit transition matrix with H Q = Q J(eta).
    """

    async def execute(self) -> WorkflowResult:
        if self.config.t is not None and self.config.t != 1.0:
            raise InvalidParameterError(f"'jordan' works at the exceptional point t = 1, got --t {self.config.t}.")
        decomposition = self.resolve_decomposition()
        h = assemble_full(decomposition.n, decomposition, 1.0, self.config.shift)

        certificate = jordan_certificate(h)
        k = geometric_multiplicity(h, h.shift, self.config.tolerances.tol_rank)
        diagnostics = {"K_expected": decomposition.k, "K_numerical": k, "residual": certificate.residual}
        if k != decomposition.k:
            raise CertificationError(f"Geometric multiplicity {k} differs from the block count {decomposition.k}.", diagnostics)
        bound = JORDAN_RESIDUAL_TOLERANCE * max(h.norm, 1.0)
        if certificate.residual > bound:
            raise CertificationError(f"Jordan residual {certificate.residual:.3e} exceeds {bound:.3e}.", diagnostics)

        self.console.display_summary(
            "Jordan certificate",
            [
                ("eta", f"{certificate.eta:g}"),
                ("chain lengths", str(list(certificate.chain_lengths))),
                ("K", str(k)),
                ("residual", f"{certificate.residual:.3e}"),
                ("cond(Q)", f"{certificate.q_condition:.3e}"),
            ],
        )

        if self.output_format is OutputFormat.TEXT:
            header = (
                f"eta = {certificate.eta:g}\nchain lengths = {list(certificate.chain_lengths)}\n"
                f"K = {k}\nresidual = {certificate.residual:.3e}\nQ =\n"
            )
            return WorkflowResult(header + render_matrix_text(certificate.Q))
        if self.output_format is OutputFormat.CSV:
            return WorkflowResult(spectrum_csv([repr(encode_float(x)) for x in row] for row in certificate.Q))

        document = certificate.to_dict()
        document["blocks"] = format_blocks(decomposition)
        document["geometric_multiplicity"] = k
        return WorkflowResult(dumps(document))


class MetricWorkflow(MatrixWorkflow):
    async def execute(self) -> WorkflowResult:
        decomposition, h = self.assemble()
        certificate = metric_certificate(h, self.config.weights, self.config.tolerances)
        if not certificate.positive_definite:
            raise CertificationError(
                f"Metric is not positive definite (min eigenvalue {certificate.min_eigenvalue:.3e}).",
                {"min_eigenvalue": certificate.min_eigenvalue},
            )
        self.console.display_summary(
            "Metric certificate",
            [
                ("min eigenvalue", f"{certificate.min_eigenvalue:.6g}"),
                ("intertwining residual", f"{certificate.intertwining_residual:.3e}"),
                ("trace", f"{certificate.normalization:.6g}"),
            ],
        )

        if self.output_format is OutputFormat.TEXT:
            header = (
                f"min eigenvalue = {certificate.min_eigenvalue:.12g}\n"
                f"intertwining residual = {certificate.intertwining_residual:.3e}\nTheta =\n"
            )
            return WorkflowResult(header + render_matrix_text(certificate.Theta))
        if self.output_format is OutputFormat.CSV:
            return WorkflowResult(spectrum_csv([repr(encode_float(x)) for x in row] for row in certificate.Theta))

        document = certificate.to_dict()
        document.update({"n": h.n, "t": encode_float(h.t), "blocks": format_blocks(decomposition)})
        return WorkflowResult(dumps(document))


class ProbeWorkflow(MatrixWorkflow):
    """Fits the eps**(1/M) splitting of each Jordan chain under a seeded perturbation."""

    async def execute(self) -> WorkflowResult:
        decomposition = self.resolve_decomposition()
        if not self.config.epsilons:
            raise InvalidParameterError("--epsilons is required for 'probe'.")
        results = splitting_exponent(decomposition, self.config.epsilons, self.config.seed, self.config.shift)
        self.console.display_summary(
            "Splitting exponents",
            [
                (f"M={r.chain_length}", "unresolved" if r.exponent is None else f"{r.exponent:.4f} (1/M = {r.expected:.4f})")
                for r in results
            ],
        )
        for r in results:
            if r.resolved and r.relative_error > PROBE_RELATIVE_TOLERANCE:
                self.logger.warning(
                    f"Chain of length {r.chain_length}: exponent {r.exponent:.4f} is off 1/M by {r.relative_error:.0%}."
                )

        if self.output_format is OutputFormat.TEXT:
            lines = [
                f"M={r.chain_length}  expected={r.expected:.6g}  "
                + ("unresolved" if r.exponent is None else f"fitted={r.exponent:.6g}")
                for r in results
            ]
            return WorkflowResult("\n".join(lines) + "\n")
        if self.output_format is OutputFormat.CSV:
            rows = [["chain_length", "expected", "exponent"]]
            rows += [
                [r.chain_length, repr(encode_float(r.expected)), "" if r.exponent is None else repr(encode_float(r.exponent))]
                for r in results
            ]
            return WorkflowResult(spectrum_csv(rows))

        document = probe_document(results, self.config.epsilons, self.config.seed)
        document["blocks"] = format_blocks(decomposition)
        return WorkflowResult(dumps(document))
