# modules/certification/multiplicity.py

import logging
from typing import Optional

import numpy as np
import scipy.linalg

from ..errors import DimensionMismatchError, NumericFailureError
from ..hamiltonian_builder import HamiltonianMatrix

logger = logging.getLogger(__name__)


def default_rank_tolerance(n: int) -> float:
    return n * 2.0 ** -40


def numerical_rank(array: np.ndarray, tol_rank: Optional[float] = None) -> int:
    """
    Number of singular values at or above tol_rank * sigma_max.

    :param array: Square matrix.
    :param tol_rank: Relative threshold; None selects N * 2**-40.
    """
    array = np.asarray(array, dtype=float)
    if tol_rank is None:
        tol_rank = default_rank_tolerance(array.shape[0])
    try:
        sigma = scipy.linalg.svdvals(array)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericFailureError(f"SVD failed: {e}", matrix=array)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma >= tol_rank * sigma[0]))


def geometric_multiplicity(h, eta: float, tol_rank: Optional[float] = None) -> int:
    """
    K = N - rank(H - eta*I). K = 0 means eta is not an eigenvalue.

    :param h: HamiltonianMatrix or raw square array.
    :param eta: Candidate eigenvalue.
    :param tol_rank: Relative singular value threshold.
    """
    array = h.entries if isinstance(h, HamiltonianMatrix) else np.asarray(h, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {array.shape}.")
    n = array.shape[0]
    k = n - numerical_rank(array - eta * np.eye(n), tol_rank)
    logger.debug(f"Geometric multiplicity at eta={eta}: K={k}.")
    return k
