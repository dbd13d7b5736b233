# modules/certification/splitting_probe.py
"""
Sensitivity of the EPN confluence to small antisymmetric perturbations.

A Jordan chain of length M splits like eps**(1/M) under a generic perturbation
of size eps, so the eigenvalues of H(1) + eps*R separate into groups by
distance from eta: the longest chain gives the widest group.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from ..boxed_symbols import Decomposition
from ..errors import InvalidParameterError, NumericFailureError
from ..hamiltonian_builder import assemble_full
from ..matrix_codec import SCHEMA_VERSION, encode_float

logger = logging.getLogger(__name__)

MIN_DECADES = 3.0
NOISE_FLOOR = 1e-12


@dataclass(frozen=True)
class ClusterExponent:
    """Fitted log-log slope of one eigenvalue group; exponent is None when unresolved."""

    chain_length: int
    exponent: Optional[float]
    diameters: List[float] = field(default_factory=list)

    @property
    def expected(self) -> float:
        return 1.0 / self.chain_length

    @property
    def resolved(self) -> bool:
        return self.exponent is not None

    @property
    def relative_error(self) -> Optional[float]:
        if self.exponent is None:
            return None
        return abs(self.exponent - self.expected) / self.expected

    def to_dict(self) -> dict:
        return {
            "chain_length": self.chain_length,
            "expected": encode_float(self.expected),
            "exponent": None if self.exponent is None else encode_float(self.exponent),
            "resolved": self.resolved,
            "diameters": [encode_float(d) for d in self.diameters],
        }


def probe_document(results: Sequence[ClusterExponent], epsilons: Sequence[float], seed: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "epsilons": [encode_float(e) for e in epsilons],
        "clusters": [r.to_dict() for r in results],
    }


def perturbation_matrix(n: int, seed: int) -> np.ndarray:
    """Antisymmetric N x N matrix with unit max-norm, a pure function of (n, seed)."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    r = a - a.T
    return r / np.max(np.abs(r))


def _validate_epsilons(epsilons: Sequence[float]) -> np.ndarray:
    values = np.asarray([float(e) for e in epsilons])
    if values.size < 2:
        raise InvalidParameterError("At least two perturbation strengths are needed for a fit.")
    if np.any(~np.isfinite(values)) or np.any(values <= 0.0):
        raise InvalidParameterError(f"Perturbation strengths must be positive, got {values.tolist()}.")
    if np.log10(values.max() / values.min()) < MIN_DECADES:
        raise InvalidParameterError(f"Perturbation strengths must span at least {MIN_DECADES:g} decades.")
    return values


def _group_diameters(values: np.ndarray, eta: float, chain_lengths: Sequence[int]) -> List[float]:
    order = np.argsort(-np.abs(values - eta), kind="stable")
    ranked = values[order]
    diameters = []
    start = 0
    for length in chain_lengths:
        group = ranked[start:start + length]
        if length == 1:
            # a lone eigenvalue only drifts; measure its displacement
            diameters.append(float(abs(group[0] - eta)))
        else:
            diameters.append(float(np.max(np.abs(group[:, None] - group[None, :]))))
        start += length
    return diameters


def splitting_exponent(
    decomposition: Decomposition,
    epsilons: Sequence[float],
    seed: int,
    shift: float = 0.0,
) -> List[ClusterExponent]:
    """
    Fit diameter ~ eps**p for every chain-length group of H(t=1) + eps*R.

    The same R, drawn from seed, is used at every eps, so each grid point can
    be evaluated independently. Groups whose diameter falls below the float
    noise floor at any eps are reported unresolved.
    """
    epsilons = _validate_epsilons(epsilons)
    h = assemble_full(decomposition.n, decomposition, 1.0, shift)
    r = perturbation_matrix(h.n, seed)
    chain_lengths = decomposition.partition
    floor = NOISE_FLOOR * (1.0 + h.norm)

    per_epsilon = []
    for eps in epsilons:
        try:
            values = scipy.linalg.eigvals(h.entries + eps * r)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise NumericFailureError(f"Eigensolver failed at eps={eps:g}: {e}", matrix=h.entries + eps * r)
        per_epsilon.append(_group_diameters(values, shift, chain_lengths))

    results = []
    log_eps = np.log10(epsilons)
    for index, length in enumerate(chain_lengths):
        diameters = [row[index] for row in per_epsilon]
        if min(diameters) <= floor:
            logger.warning(f"Chain of length {length}: splitting below the noise floor; fit unresolved.")
            results.append(ClusterExponent(chain_length=length, exponent=None, diameters=diameters))
            continue
        slope = float(np.polyfit(log_eps, np.log10(diameters), 1)[0])
        logger.info(f"Chain of length {length}: fitted exponent {slope:.4f} (expected {1.0 / length:.4f}).")
        results.append(ClusterExponent(chain_length=length, exponent=slope, diameters=diameters))
    return results
