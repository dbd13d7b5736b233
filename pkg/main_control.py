"""
EPN Toolkit Command-Line Script

Commands:
    enumerate  : Decompositions of the N-diagonal into boxed symbols, with K.
    build      : Hamiltonian matrix of one decomposition at coupling t.
    spectrum   : Eigenvalues, reality flag and degeneracy clusters at coupling t.
    sweep      : Spectra over a t grid (CSV suitable for plotting).
    jordan     : Jordan-chain certificate at the exceptional point t = 1.
    metric     : Hermitization metric inside the unitarity corridor.
    probe      : Splitting exponents of the EP under a seeded perturbation.
    oeis-check : Scenario counts against the published sequence.

Arguments:
    --config : (Optional) Path to the configuration YAML file. If not provided, the default is:
               config/epn_parameters.yaml (built-in defaults when it does not exist)
    --index / --blocks : Decomposition selector; 0-based index into the canonical
               enumeration, or an explicit block list "(M,L);(M,L);..."
"""

import argparse
import asyncio
import logging
import sys
from typing import List

from modules.config_loader import load_config
from modules.errors import ValidationError
from modules.run_config import Command, OutputFormat, RunConfig
from modules.workflow_manager import run


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Argument errors exit with status 1; status 2 is kept for numeric failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got '{text}'")


def build_parser() -> ToolkitArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None,
                        help='Path to the parameter YAML file (default: config/epn_parameters.yaml)')
    common.add_argument('--format', type=str, choices=[f.value for f in OutputFormat], default=None,
                        help='Artifact format (default: default_format of the configuration)')
    common.add_argument('--output', type=str, default=None, help='Write the artifact to this path instead of stdout')
    common.add_argument('--verbose', action='store_true', default=None, help='Debug logging and rich tables on stderr')

    tolerances = argparse.ArgumentParser(add_help=False)
    tolerances.add_argument('--tol-rank', dest='tol_rank', type=float, default=None,
                            help='Relative singular value threshold (default: N * 2**-40)')
    tolerances.add_argument('--cluster-gap', dest='cluster_gap', type=float, default=None,
                            help='Relative eigenvalue clustering distance')
    tolerances.add_argument('--reality-tol', dest='reality_tol', type=float, default=None,
                            help='Relative bound on imaginary parts of a real spectrum')
    tolerances.add_argument('--dps', type=int, default=None,
                            help='Decimal digits for extended-precision eigenvalues (0: double precision)')

    selector = argparse.ArgumentParser(add_help=False)
    selector.add_argument('--n', type=int, required=True, help='Matrix dimension N >= 2')
    choice = selector.add_mutually_exclusive_group()
    choice.add_argument('--index', type=int, default=None, help='0-based index into the canonical enumeration')
    choice.add_argument('--blocks', type=str, default=None, help='Explicit block list "(M,L);(M,L);..."')
    selector.add_argument('--shift', type=float, default=None, help='Diagonal shift eta (default: 0)')

    coupling = argparse.ArgumentParser(add_help=False)
    coupling.add_argument('--t', type=float, default=None, help='Coupling strength t >= 0 (t = 1 is the EP)')

    parser = ToolkitArgumentParser(description="Toolkit for exceptional points of maximal order in sparse non-Hermitian matrices")
    commands = parser.add_subparsers(dest='command', required=True, parser_class=ToolkitArgumentParser)

    enumerate_parser = commands.add_parser(Command.ENUMERATE.value, parents=[common], help='List decompositions of the N-diagonal')
    enumerate_parser.add_argument('--n', type=int, required=True, help='Matrix dimension N >= 2')

    commands.add_parser(Command.BUILD.value, parents=[common, selector, coupling], help='Assemble the Hamiltonian')
    commands.add_parser(Command.SPECTRUM.value, parents=[common, selector, coupling, tolerances], help='Eigenvalues at one t')

    sweep_parser = commands.add_parser(Command.SWEEP.value, parents=[common, selector, tolerances], help='Spectra over a t grid')
    sweep_parser.add_argument('--t-grid', dest='t_grid', type=float_list, default=None,
                              help='Comma-separated couplings (default: t_grid of the configuration)')

    commands.add_parser(Command.JORDAN.value, parents=[common, selector, coupling, tolerances], help='Jordan-chain certificate at t = 1')

    metric_parser = commands.add_parser(Command.METRIC.value, parents=[common, selector, coupling, tolerances], help='Hermitization metric')
    metric_parser.add_argument('--weights', type=float_list, default=None,
                               help='Comma-separated positive weights, one per eigenvalue in ascending order')

    probe_parser = commands.add_parser(Command.PROBE.value, parents=[common, selector], help='Splitting exponents near the EP')
    probe_parser.add_argument('--epsilons', type=float_list, default=None,
                              help='Comma-separated perturbation strengths spanning at least 3 decades')
    probe_parser.add_argument('--seed', type=int, default=None, help='Seed of the antisymmetric perturbation')

    check_parser = commands.add_parser(Command.OEIS_CHECK.value, parents=[common], help='Check counts against the published sequence')
    check_parser.add_argument('--max-n', dest='max_n', type=int, default=17, help='Largest N to check (default: 17)')
    return parser


async def main() -> int:
    """
    Main entry point for the EPN Toolkit.
    Parses arguments, loads the configuration, runs the command and returns the exit status.
    """
    args = build_parser().parse_args()

    # Load configuration
    try:
        settings = load_config(args.config)
        config = RunConfig.from_args(args, settings)
    except ValidationError as e:
        print(f"Configuration Error: {e}. Exiting.", file=sys.stderr)
        return 1

    # Set up root logger (configured once)
    handlers = [logging.StreamHandler()]  # stderr
    if settings.get('log_file'):
        handlers.append(logging.FileHandler(settings['log_file']))
    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )

    logger = logging.getLogger('MainControl')
    logger.info(f"Starting EPN Toolkit command '{config.command.value}'.")
    status = await run(config)
    logger.info(f"Finished with exit status {status}.")
    return status


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        logging.getLogger('MainControl').info("Interrupted.")
        sys.exit(1)
