# modules/hamiltonian_builder.py
"""
Tridiagonal AHO blocks and their assembly into sparse N x N Hamiltonians.

Every block S(M, L) contributes the tridiagonal matrix with diagonal
(1-M)L, ..., (M-1)L and antisymmetric couplings t*L*sqrt(n(M-n)).
Its spectrum is (2m+1-M)*L*sqrt(1-t^2); all levels meet at zero for t = 1.
Assembly places block value v at row (v + N - 1)/2, so a block of scale L
couples rows L apart and the full matrix is a permuted direct sum.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import mpmath as mp
import numpy as np

from .boxed_symbols import BlockSpec, Decomposition, main_diagonal
from .errors import (
    ClassificationRequiredError,
    DimensionMismatchError,
    InvalidParameterError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """
    Real N x N matrix with equidistant diagonal and antisymmetric off-diagonal part.

    entries is read-only. provenance is the decomposition an assembled matrix
    came from; block is set for single-block matrices from build_block.
    Raw inputs created with from_array carry neither and t is None.
    """

    n: int
    entries: np.ndarray
    t: Optional[float] = None
    shift: float = 0.0
    provenance: Optional[Decomposition] = None
    block: Optional[BlockSpec] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.shape != (self.n, self.n):
            raise DimensionMismatchError(f"Entries of shape {entries.shape} do not match N={self.n}.")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_array(cls, entries, shift: float = 0.0) -> "HamiltonianMatrix":
        """Wrap an arbitrary real square matrix as raw input to the analysis operations."""
        array = np.asarray(entries, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(f"Expected a square matrix, got shape {array.shape}.")
        return cls(n=array.shape[0], entries=array, shift=shift)

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))

    @property
    def norm(self) -> float:
        """Spectral norm."""
        return float(np.linalg.norm(self.entries, 2))

    @property
    def blocks(self) -> Tuple[BlockSpec, ...]:
        if self.provenance is not None:
            return self.provenance.blocks
        if self.block is not None:
            return (self.block,)
        return ()

    def to_mpmath(self, dps: Optional[int] = None):
        """
        The matrix as an mpmath matrix, at dps digits or the current working precision.
        With provenance the couplings are recomputed, not rounded from float64.
        """
        if dps:
            with mp.workdps(dps):
                return self._mpmath_entries()
        return self._mpmath_entries()

    def _mpmath_entries(self):
        if self.t is None or not self.blocks:
            return mp.matrix(self.entries.tolist())

        matrix = mp.matrix(self.n, self.n)
        if self.block is not None:
            layout = [(self.block, list(range(self.n)))]
        else:
            layout = [(b, block_indices(self.n, b)) for b in self.provenance.blocks]
        t = mp.mpf(self.t)
        shift = mp.mpf(self.shift)
        for block, indices in layout:
            for value, row in zip(block.values, indices):
                matrix[row, row] = mp.mpf(value) + shift
            size = block.size
            for k in range(1, size):
                coupling = t * block.scale * mp.sqrt(k * (size - k))
                matrix[indices[k - 1], indices[k]] = coupling
                matrix[indices[k], indices[k - 1]] = -coupling
        return matrix


def t_from_g(g: float, scale: float = 2.0) -> float:
    """Corridor parameter of the N=7 pentadiagonal model, whose coupling g reaches the EP at g = 2."""
    return g / scale


def t_from_kappa(kappa: float) -> float:
    """Strong-coupling parametrization: g = 2(1 - kappa^2), i.e. t = 1 - kappa^2."""
    return 1.0 - kappa * kappa


def _require_coupling(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise InvalidParameterError(f"Coupling t must be a finite non-negative number, got {t}.")
    return t


def block_couplings(block: BlockSpec, t: float) -> np.ndarray:
    """Superdiagonal t*L*sqrt(n(M-n)), n = 1..M-1."""
    n = np.arange(1, block.size)
    return t * block.scale * np.sqrt(n * (block.size - n))


def block_indices(n: int, block: BlockSpec) -> List[int]:
    """0-based rows of the N x N matrix occupied by the block, ascending."""
    return [(v + n - 1) // 2 for v in block.values]


def build_block(block: BlockSpec, t: float, shift: float = 0.0) -> HamiltonianMatrix:
    t = _require_coupling(t)
    couplings = block_couplings(block, t)
    entries = np.diag(np.asarray(block.values, dtype=float) + shift)
    entries += np.diag(couplings, 1) - np.diag(couplings, -1)
    return HamiltonianMatrix(n=block.size, entries=entries, t=t, shift=float(shift), block=block)


def assemble_full(n: int, decomposition: Decomposition, t: float, shift: float = 0.0) -> HamiltonianMatrix:
    """
    Place every block of the decomposition on its index sublattice.

    :param n: Dimension N; must equal decomposition.n.
    :param decomposition: The cover of the diagonal.
    :param t: Corridor parameter, EP at t = 1.
    :param shift: Added to the diagonal (N restores the unshifted harmonic scale).
    """
    if decomposition.n != n:
        raise DimensionMismatchError(f"Decomposition is for N={decomposition.n}, not N={n}.")
    t = _require_coupling(t)

    entries = np.diag(np.asarray(main_diagonal(n), dtype=float) + shift)
    for block in decomposition.blocks:
        rows = block_indices(n, block)
        for k, coupling in enumerate(block_couplings(block, t)):
            entries[rows[k], rows[k + 1]] = coupling
            entries[rows[k + 1], rows[k]] = -coupling

    logger.debug(f"Assembled N={n} Hamiltonian for {decomposition} at t={t}, shift={shift}.")
    return HamiltonianMatrix(n=n, entries=entries, t=t, shift=float(shift), provenance=decomposition)


def _require_provenance(h: HamiltonianMatrix) -> Decomposition:
    if h.provenance is None:
        raise ClassificationRequiredError("This operation needs a matrix assembled from a decomposition.")
    return h.provenance


def split_components(h: HamiltonianMatrix) -> List[HamiltonianMatrix]:
    """Extract each block's sub-matrix from its index sublattice, in canonical block order."""
    decomposition = _require_provenance(h)
    components = []
    for block in decomposition.blocks:
        rows = block_indices(h.n, block)
        sub = h.entries[np.ix_(rows, rows)]
        components.append(HamiltonianMatrix(n=block.size, entries=sub, t=h.t, shift=h.shift, block=block))
    return components


def block_diagonal(h: HamiltonianMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Permutation P (as an index vector) and P^T H P, the explicit direct sum.
    Column j of P is the unit vector e_perm[j].
    """
    decomposition = _require_provenance(h)
    perm = np.array([row for block in decomposition.blocks for row in block_indices(h.n, block)])
    return perm, h.entries[np.ix_(perm, perm)]


def offsets(h: HamiltonianMatrix) -> Set[int]:
    """Diagonal offsets j - i carrying at least one nonzero entry."""
    rows, cols = np.nonzero(h.entries)
    return {int(c - r) for r, c in zip(rows, cols)}


def diagonal_count(h: HamiltonianMatrix) -> int:
    present = offsets(h)
    return 2 * max((abs(o) for o in present), default=0) + 1


def sort_spectrum(values) -> np.ndarray:
    """Sort by real part, then imaginary part."""
    values = np.asarray(values)
    order = np.lexsort((np.imag(values), np.real(values)))
    return values[order]


def closed_form_spectrum(decomposition: Decomposition, t: float, shift: float = 0.0) -> np.ndarray:
    """
    Exact levels (2m+1-M_k)*L_k*sqrt(1-t^2) + shift of every block.
    Real for t <= 1; beyond the EP the offsets are purely imaginary.
    """
    t = _require_coupling(t)
    if t <= 1.0:
        factor = math.sqrt(1.0 - t * t)
    else:
        factor = 1j * math.sqrt(t * t - 1.0)
    levels = [v * factor + shift for block in decomposition.blocks for v in block.values]
    return sort_spectrum(np.asarray(levels))
