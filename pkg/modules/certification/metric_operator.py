# modules/certification/metric_operator.py

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from ..config_loader import Tolerances
from ..errors import InvalidParameterError, MetricUnavailableError, NumericFailureError
from ..hamiltonian_builder import HamiltonianMatrix
from ..matrix_codec import SCHEMA_VERSION, encode_float, encode_matrix_rows

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MetricCertificate:
    """
    Symmetric Theta with H^T Theta = Theta H, normalized to trace N.
    weights are the coefficients of the left-eigenvector projectors,
    listed in ascending eigenvalue order.
    """

    Theta: np.ndarray
    min_eigenvalue: float
    intertwining_residual: float
    weights: np.ndarray

    @property
    def positive_definite(self) -> bool:
        return self.min_eigenvalue > 0.0

    @property
    def normalization(self) -> float:
        return float(np.trace(self.Theta))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "Theta": encode_matrix_rows(self.Theta),
            "min_eigenvalue": encode_float(self.min_eigenvalue),
            "positive_definite": self.positive_definite,
            "intertwining_residual": encode_float(self.intertwining_residual),
            "normalization": encode_float(self.normalization),
            "weights": [encode_float(w) for w in self.weights],
        }


def metric_certificate(
    h,
    weights: Optional[Sequence[float]] = None,
    tolerances: Optional[Tolerances] = None,
) -> MetricCertificate:
    """
    Theta = sum_n w_n l_n l_n^T over the unit left eigenvectors l_n of H.

    :param h: HamiltonianMatrix inside the corridor (t < 1) or a raw real array.
    :param weights: Positive weights, one per eigenvalue in ascending order; all ones by default.
    :param tolerances: Reality and simplicity thresholds.
    """
    tolerances = tolerances or Tolerances()
    array = h.entries if isinstance(h, HamiltonianMatrix) else np.asarray(h, dtype=float)
    n = array.shape[0]
    if isinstance(h, HamiltonianMatrix) and h.t is not None and h.t >= 1.0:
        raise MetricUnavailableError(f"No positive metric at or beyond the exceptional point (t = {h.t}).")

    if weights is None:
        weights = np.ones(n)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (n,) or np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
        raise InvalidParameterError(f"Expected {n} positive finite weights, got {weights.tolist()}.")

    try:
        values, left = scipy.linalg.eig(array, left=True, right=False)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericFailureError(f"Eigensolver failed to converge: {e}", matrix=array)

    norm = float(np.linalg.norm(array, 2))
    max_imag = float(np.max(np.abs(values.imag)))
    if max_imag > tolerances.reality_tol * max(norm, 1.0):
        raise MetricUnavailableError(f"Complex spectrum (max |Im E| = {max_imag:.3e}); no positive metric exists.")

    order = np.argsort(values.real)
    levels = values.real[order]
    min_gap = float(np.min(np.diff(levels))) if n > 1 else np.inf
    if min_gap <= tolerances.cluster_gap * (1.0 + norm):
        raise MetricUnavailableError(f"Degenerate spectrum (min gap {min_gap:.3e}); no positive metric exists.")

    vectors = np.real(left[:, order])
    vectors /= np.linalg.norm(vectors, axis=0)
    theta = (vectors * weights) @ vectors.T
    theta *= n / np.trace(theta)
    theta = 0.5 * (theta + theta.T)

    min_eigenvalue = float(np.linalg.eigvalsh(theta)[0])
    residual = float(np.max(np.abs(array.T @ theta - theta @ array)))
    logger.info(f"Metric built: min eigenvalue {min_eigenvalue:.3e}, intertwining residual {residual:.3e}.")
    return MetricCertificate(
        Theta=theta, min_eigenvalue=min_eigenvalue, intertwining_residual=residual, weights=weights
    )
