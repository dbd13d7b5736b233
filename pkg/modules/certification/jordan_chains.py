# modules/certification/jordan_chains.py
"""
Jordan chains of the EP-limit Hamiltonians.

At t = 1 every tridiagonal block minus eta*I is nilpotent with a
one-dimensional kernel, so each block carries exactly one chain of length M.
The chain is found row by row: the superdiagonal entry of row k fixes
component k+1 from components k-1 and k.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..errors import CertificationError, InvalidParameterError
from ..hamiltonian_builder import HamiltonianMatrix, _require_provenance, block_indices
from ..matrix_codec import SCHEMA_VERSION, encode_float, encode_matrix_rows

logger = logging.getLogger(__name__)

EP_COUPLING_TOLERANCE = 1e-12
PIVOT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class JordanCertificate:
    """
    H Q = Q J(eta) with the reported residual max|HQ - QJ|.
    Columns of Q are grouped chain by chain, heads first.
    """

    eta: float
    chain_lengths: Tuple[int, ...]
    Q: np.ndarray
    J: np.ndarray
    residual: float
    q_condition: float

    @property
    def k(self) -> int:
        return len(self.chain_lengths)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "eta": encode_float(self.eta),
            "chain_lengths": list(self.chain_lengths),
            "K": self.k,
            "residual": encode_float(self.residual),
            "q_condition": encode_float(self.q_condition),
            "Q": encode_matrix_rows(self.Q),
            "J": encode_matrix_rows(self.J),
        }


def jordan_matrix(eta: float, chain_lengths: Sequence[int]) -> np.ndarray:
    """Block-diagonal upper Jordan matrix, blocks in the given order."""
    n = int(sum(chain_lengths))
    j = eta * np.eye(n)
    start = 0
    for length in chain_lengths:
        for k in range(start, start + length - 1):
            j[k, k + 1] = 1.0
        start += length
    return j


def transition_residual(h, q: np.ndarray, eta: float, chain_lengths: Sequence[int]) -> float:
    """max |H Q - Q J(eta)|, usable on any externally supplied transition matrix."""
    array = h.entries if isinstance(h, HamiltonianMatrix) else np.asarray(h, dtype=float)
    q = np.asarray(q, dtype=float)
    j = jordan_matrix(eta, chain_lengths)
    if q.shape != array.shape or j.shape != array.shape:
        raise InvalidParameterError(
            f"Shapes do not agree: H {array.shape}, Q {q.shape}, chains {list(chain_lengths)}."
        )
    return float(np.max(np.abs(array @ q - q @ j)))


def _tridiagonal_chain(block: np.ndarray, eta: float) -> np.ndarray:
    """
    Columns q_1..q_M with (B - eta) q_1 = 0 and (B - eta) q_{j+1} = q_j.
    Components beyond the first come from the first M-1 rows; the last row is
    left to the residual check.
    """
    size = block.shape[0]
    shifted = block - eta * np.eye(size)
    diagonal = np.diag(shifted)
    upper = np.diag(shifted, 1)
    lower = np.diag(shifted, -1)
    scale = 1.0 + float(np.max(np.abs(shifted)))

    small = np.abs(upper) <= PIVOT_TOLERANCE * scale
    if np.any(small):
        raise CertificationError(
            "Chain solve is singular: vanishing superdiagonal coupling.",
            _chain_diagnostics(upper, scale),
        )

    chain = np.zeros((size, size))
    rhs = np.zeros(size)
    for column in range(size):
        x = np.zeros(size)
        x[0] = 1.0 if column == 0 else 0.0
        for k in range(size - 1):
            acc = rhs[k] - diagonal[k] * x[k]
            if k > 0:
                acc -= lower[k - 1] * x[k - 1]
            x[k + 1] = acc / upper[k]
        chain[:, column] = x
        rhs = x

    head = chain[:, 0]
    pivot = head[np.argmax(np.abs(head))]
    return chain / pivot


def _chain_diagnostics(upper: np.ndarray, scale: float) -> dict:
    return {"superdiagonal": [float(x) for x in upper], "scale": scale, "pivot_tolerance": PIVOT_TOLERANCE}


def jordan_certificate(h: HamiltonianMatrix) -> JordanCertificate:
    """
    Transition matrix of an EP-limit Hamiltonian assembled from a decomposition.

    Chains are ordered by descending length, ties in canonical block order.
    eta equals the diagonal shift of the matrix.
    """
    decomposition = _require_provenance(h)
    if h.t is None or abs(h.t - 1.0) > EP_COUPLING_TOLERANCE:
        raise InvalidParameterError(f"Jordan certification needs the EP limit t = 1, got t = {h.t}.")

    eta = float(h.shift)
    blocks = sorted(decomposition.blocks, key=lambda b: -b.size)
    q = np.zeros((h.n, h.n))
    column = 0
    for block in blocks:
        rows = block_indices(h.n, block)
        chain = _tridiagonal_chain(h.entries[np.ix_(rows, rows)], eta)
        q[np.ix_(rows, range(column, column + block.size))] = chain
        column += block.size

    chain_lengths = tuple(b.size for b in blocks)
    j = jordan_matrix(eta, chain_lengths)
    residual = float(np.max(np.abs(h.entries @ q - q @ j)))
    q_condition = float(np.linalg.cond(q))
    if not np.isfinite(residual):
        raise CertificationError("Chain construction produced non-finite entries.", {"residual": residual})

    logger.info(f"Jordan chains {list(chain_lengths)} at eta={eta}: residual={residual:.3e}, cond(Q)={q_condition:.3e}.")
    return JordanCertificate(eta=eta, chain_lengths=chain_lengths, Q=q, J=j, residual=residual, q_condition=q_condition)
