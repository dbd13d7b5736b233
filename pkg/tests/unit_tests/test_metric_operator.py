import numpy as np
import pytest

from modules.certification import metric_certificate
from modules.errors import InvalidParameterError, MetricUnavailableError
from modules.hamiltonian_builder import HamiltonianMatrix, assemble_full
from modules.scenario_enumerator import enumerate_decompositions


def _assert_valid_metric(array, certificate, tolerance):
    theta = certificate.Theta
    assert np.array_equal(theta, theta.T)
    assert certificate.positive_definite
    assert np.linalg.eigvalsh(theta)[0] > 0.0
    assert certificate.normalization == pytest.approx(array.shape[0])
    scale = np.linalg.norm(array, 2) * np.linalg.norm(theta, 2)
    assert certificate.intertwining_residual <= tolerance * scale
    assert np.max(np.abs(array.T @ theta - theta @ array)) <= tolerance * scale


def test_bare_diagonal_gives_identity(n7_model):
    certificate = metric_certificate(assemble_full(7, n7_model, 0.0, shift=7.0))
    assert np.allclose(certificate.Theta, np.eye(7), atol=1e-14)


def test_two_level_family():
    array = np.array([[-1.0, 0.5], [-0.5, 1.0]])
    certificate = metric_certificate(HamiltonianMatrix.from_array(array))
    (a, b), (_, c) = certificate.Theta
    # every intertwiner of this matrix satisfies a + 4b + c = 0
    assert a + 4 * b + c == pytest.approx(0.0, abs=1e-12)
    _assert_valid_metric(array, certificate, 1e-12)


def test_n7_model_inside_the_corridor(n7_model):
    h = assemble_full(7, n7_model, 0.5, shift=7.0)
    certificate = metric_certificate(h)
    assert certificate.min_eigenvalue > 0.0
    assert certificate.intertwining_residual <= 1e-10 * h.norm * np.linalg.norm(certificate.Theta, 2)


@pytest.mark.parametrize("d", [d for n in range(2, 9) for d in enumerate_decompositions(n)], ids=str)
@pytest.mark.parametrize("t", [0.25, 0.5, 0.9])
def test_metric_exists_in_the_corridor(d, t):
    h = assemble_full(d.n, d, t)
    _assert_valid_metric(h.entries, metric_certificate(h), 1e-10)


def test_weights_change_the_metric(n7_model):
    h = assemble_full(7, n7_model, 0.5)
    uniform = metric_certificate(h)
    weighted = metric_certificate(h, weights=[1, 2, 3, 4, 5, 6, 7])
    assert not np.allclose(uniform.Theta, weighted.Theta)
    _assert_valid_metric(h.entries, weighted, 1e-10)


@pytest.mark.parametrize("weights", [[1, 1], [1, 1, 1, 1, 1, 1, -1], [0, 1, 1, 1, 1, 1, 1]])
def test_rejects_bad_weights(n7_model, weights):
    with pytest.raises(InvalidParameterError):
        metric_certificate(assemble_full(7, n7_model, 0.5), weights=weights)


@pytest.mark.parametrize("t", [1.0, 1.2])
def test_unavailable_at_and_beyond_the_ep(n7_model, t):
    with pytest.raises(MetricUnavailableError):
        metric_certificate(assemble_full(7, n7_model, t))


def test_unavailable_for_complex_or_degenerate_raw_input():
    with pytest.raises(MetricUnavailableError):
        metric_certificate(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    with pytest.raises(MetricUnavailableError):
        metric_certificate(np.eye(3))


def test_serialization(n7_model):
    document = metric_certificate(assemble_full(7, n7_model, 0.5)).to_dict()
    assert document["positive_definite"] is True
    assert document["normalization"] == pytest.approx(7.0)
    assert len(document["weights"]) == 7
