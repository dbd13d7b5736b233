# modules/spectrum_handler.py

import asyncio
import logging
import threading
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import mpmath as mp
import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.optimize import linear_sum_assignment

from .boxed_symbols import Decomposition
from .config_loader import Tolerances
from .errors import DimensionMismatchError, InvalidParameterError, NumericFailureError
from .hamiltonian_builder import HamiltonianMatrix, assemble_full, sort_spectrum
from .matrix_codec import SCHEMA_VERSION, encode_complex_list, encode_float

logger = logging.getLogger(__name__)

MatrixLike = Union[HamiltonianMatrix, np.ndarray]

# mpmath keeps its working precision in a process-wide context.
_MPMATH_LOCK = threading.Lock()


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """
    Eigenvalues of one matrix, sorted by real then imaginary part,
    with the reality flag and the single-linkage degeneracy clusters.
    """

    t: Optional[float]
    eigenvalues: np.ndarray
    all_real: bool
    clusters: Tuple[Tuple[int, ...], ...]
    max_imag: float
    norm: float = 0.0
    shift: float = 0.0
    dps: int = 0

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def cluster_sizes(self) -> List[int]:
        return [len(c) for c in self.clusters]

    def cluster_centers(self) -> List[complex]:
        return [complex(np.mean(self.eigenvalues[list(c)])) for c in self.clusters]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "t": None if self.t is None else encode_float(self.t),
            "eigenvalues": encode_complex_list(self.eigenvalues),
            "all_real": self.all_real,
            "max_imag": encode_float(self.max_imag),
            "clusters": [list(c) for c in self.clusters],
            "dps": self.dps,
        }

    def csv_row(self) -> list:
        row = ["" if self.t is None else repr(encode_float(self.t))]
        for value in self.eigenvalues:
            row.extend([repr(encode_float(value.real)), repr(encode_float(value.imag))])
        row.append("true" if self.all_real else "false")
        return row


def csv_header(n: int) -> List[str]:
    header = ["t"]
    for k in range(n):
        header.extend([f"re(E{k})", f"im(E{k})"])
    header.append("all_real")
    return header


def _as_array(h: MatrixLike) -> np.ndarray:
    array = h.entries if isinstance(h, HamiltonianMatrix) else np.asarray(h, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {array.shape}.")
    return array


def eigenvalues(h: MatrixLike, dps: Optional[int] = None) -> np.ndarray:
    """
    Unsorted eigenvalues of a real matrix.

    :param dps: When set, solve in mpmath at this many decimal digits;
                matrices with provenance are rebuilt at that precision first.
    """
    array = _as_array(h)
    if dps:
        matrix = h if isinstance(h, HamiltonianMatrix) else HamiltonianMatrix.from_array(array)
        try:
            with _MPMATH_LOCK, mp.workdps(dps):
                values = mp.eig(matrix.to_mpmath(), left=False, right=False)
                return np.array([complex(v) for v in values])
        except (RuntimeError, ZeroDivisionError) as e:
            raise NumericFailureError(f"Extended-precision eigensolver failed: {e}", matrix=array)

    try:
        return scipy.linalg.eigvals(array)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericFailureError(f"Eigensolver failed to converge: {e}", matrix=array)


def cluster_indices(values: np.ndarray, gap: float) -> Tuple[Tuple[int, ...], ...]:
    """Single-linkage groups of eigenvalues closer than gap, ordered by first index."""
    if len(values) == 1:
        return ((0,),)
    points = np.column_stack([np.real(values), np.imag(values)])
    labels = fcluster(linkage(points, method="single"), t=gap, criterion="distance")
    groups = {}
    for index, label in enumerate(labels):
        groups.setdefault(label, []).append(index)
    return tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))


def resolve_dps(h: MatrixLike, tolerances: Tolerances, dps: Optional[int] = None) -> int:
    """Working digits: explicit dps, then extended_dps, then the automatic EP window."""
    if dps is not None:
        return dps
    if tolerances.extended_dps:
        return tolerances.extended_dps
    if isinstance(h, HamiltonianMatrix) and h.blocks:
        auto = tolerances.near_ep_dps(h.t, h.n)
        if auto:
            logger.debug(f"t={h.t} is within {tolerances.ep_window} of the EP; solving at {auto} digits.")
        return auto
    return 0


def spectrum(h: MatrixLike, tolerances: Optional[Tolerances] = None, dps: Optional[int] = None) -> SpectrumReport:
    """
    Full eigenvalue set with reality flag and degeneracy clusters.

    :param h: Hamiltonian or raw real square array.
    :param tolerances: Reality and clustering thresholds (defaults when None).
    :param dps: Extended-precision digits; overrides tolerances.extended_dps.
                When neither is set, assembled matrices close to t = 1 are
                solved at tolerances.near_ep_dps digits.
    """
    tolerances = tolerances or Tolerances()
    dps = resolve_dps(h, tolerances, dps)
    array = _as_array(h)

    values = sort_spectrum(eigenvalues(h, dps=dps).astype(complex))
    norm = float(np.linalg.norm(array, 2))
    max_imag = float(np.max(np.abs(values.imag))) if len(values) else 0.0
    all_real = max_imag <= tolerances.reality_tol * max(norm, 1.0)
    clusters = cluster_indices(values, tolerances.cluster_gap * (1.0 + norm))

    t = h.t if isinstance(h, HamiltonianMatrix) else None
    shift = h.shift if isinstance(h, HamiltonianMatrix) else 0.0
    report = SpectrumReport(
        t=t,
        eigenvalues=values,
        all_real=all_real,
        clusters=clusters,
        max_imag=max_imag,
        norm=norm,
        shift=shift,
        dps=dps or 0,
    )
    logger.debug(
        f"Spectrum at t={t}: max_imag={max_imag:.3e}, clusters={report.cluster_sizes}, all_real={all_real}."
    )
    return report


def _validate_grid(t_grid: Sequence[float]) -> List[float]:
    grid = [float(t) for t in t_grid]
    if not grid:
        raise InvalidParameterError("The t grid is empty.")
    if any(not np.isfinite(t) or t < 0.0 for t in grid):
        raise InvalidParameterError(f"Every t must be finite and non-negative, got {grid}.")
    return grid


def corridor_scan(
    decomposition: Decomposition,
    t_grid: Sequence[float],
    shift: float = 0.0,
    tolerances: Optional[Tolerances] = None,
    dps: Optional[int] = None,
) -> List[SpectrumReport]:
    """One SpectrumReport per grid point, in input order."""
    grid = _validate_grid(t_grid)
    return [spectrum(assemble_full(decomposition.n, decomposition, t, shift), tolerances, dps) for t in grid]


async def corridor_scan_async(
    decomposition: Decomposition,
    t_grid: Sequence[float],
    shift: float = 0.0,
    tolerances: Optional[Tolerances] = None,
    dps: Optional[int] = None,
    max_workers: int = 4,
) -> List[SpectrumReport]:
    """
    Same reports as corridor_scan, evaluated in worker threads.
    asyncio.gather keeps the output in grid order.
    """
    grid = _validate_grid(t_grid)
    semaphore = asyncio.Semaphore(max(1, max_workers))

    async def evaluate(t: float) -> SpectrumReport:
        async with semaphore:
            h = assemble_full(decomposition.n, decomposition, t, shift)
            return await asyncio.to_thread(spectrum, h, tolerances, dps)

    return list(await asyncio.gather(*(evaluate(t) for t in grid)))


def match_spectra(a, b) -> float:
    """Largest deviation between two eigenvalue multisets under optimal pairing."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Spectra of different sizes: {a.shape} vs {b.shape}.")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(a) else 0.0


def ep_distance(report: SpectrumReport, eta: float) -> float:
    """max |E - eta| over the reported eigenvalues."""
    return float(np.max(np.abs(report.eigenvalues - eta)))
