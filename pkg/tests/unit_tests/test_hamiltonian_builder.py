import mpmath as mp
import numpy as np
import pytest
import scipy.linalg

from modules.boxed_symbols import BlockSpec, Decomposition, main_diagonal
from modules.errors import ClassificationRequiredError, DimensionMismatchError, InvalidParameterError
from modules.hamiltonian_builder import (
    HamiltonianMatrix,
    assemble_full,
    block_diagonal,
    build_block,
    closed_form_spectrum,
    diagonal_count,
    offsets,
    sort_spectrum,
    split_components,
    t_from_g,
    t_from_kappa,
)
from modules.scenario_enumerator import enumerate_decompositions
from modules.spectrum_handler import match_spectra

S2, S3, S6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)

EP_BLOCKS = {
    2: [[-1, 1], [-1, 1]],
    3: [[-2, S2, 0], [-S2, 0, S2], [0, -S2, 2]],
    4: [[-3, S3, 0, 0], [-S3, -1, 2, 0], [0, -2, 1, S3], [0, 0, -S3, 3]],
    5: [[-4, 2, 0, 0, 0], [-2, -2, S6, 0, 0], [0, -S6, 0, S6, 0], [0, 0, -S6, 2, 2], [0, 0, 0, -2, 4]],
}


def _all_decompositions(max_n):
    return [d for n in range(2, max_n + 1) for d in enumerate_decompositions(n)]


@pytest.mark.parametrize("size", sorted(EP_BLOCKS))
def test_ep_blocks(size):
    h = build_block(BlockSpec(size, 1), 1.0)
    assert np.allclose(h.entries, EP_BLOCKS[size], atol=1e-12, rtol=0)


def test_zero_coupling_leaves_bare_diagonal():
    h = build_block(BlockSpec(4, 2), 0.0)
    assert np.array_equal(h.entries, np.diag([-6.0, -2.0, 2.0, 6.0]))


def test_n4_two_chain_matrix(n4_two_chains):
    h = assemble_full(4, n4_two_chains, 1.0)
    expected = [[-3, 0, 0, 3], [0, -1, 1, 0], [0, -1, 1, 0], [-3, 0, 0, 3]]
    assert np.allclose(h.entries, expected, atol=1e-12, rtol=0)


def test_n5_matrices():
    nine_diagonal = assemble_full(5, Decomposition(5, (BlockSpec(3, 1), BlockSpec(2, 4))), 1.0)
    assert np.allclose(
        nine_diagonal.entries,
        [[-4, 0, 0, 0, 4], [0, -2, S2, 0, 0], [0, -S2, 0, S2, 0], [0, 0, -S2, 2, 0], [-4, 0, 0, 0, 4]],
        atol=1e-12,
        rtol=0,
    )
    pentadiagonal = assemble_full(5, Decomposition(5, (BlockSpec(3, 2), BlockSpec(2, 2))), 1.0)
    assert np.allclose(
        pentadiagonal.entries,
        [
            [-4, 0, 2 * S2, 0, 0],
            [0, -2, 0, 2, 0],
            [-2 * S2, 0, 0, 0, 2 * S2],
            [0, -2, 0, 2, 0],
            [0, 0, -2 * S2, 0, 4],
        ],
        atol=1e-12,
        rtol=0,
    )


def test_n6_three_chain_matrix(n6_three_chains):
    h = assemble_full(6, n6_three_chains, 1.0)
    expected = np.diag([-5.0, -3.0, -1.0, 1.0, 3.0, 5.0])
    for row, col, coupling in [(2, 3, 1.0), (1, 4, 3.0), (0, 5, 5.0)]:
        expected[row, col] = coupling
        expected[col, row] = -coupling
    assert np.allclose(h.entries, expected, atol=1e-12, rtol=0)


@pytest.mark.parametrize("g", [0.0, 0.5, 1.0, 1.5, 2.0])
def test_n7_pentadiagonal_model(n7_model, g):
    h = assemble_full(7, n7_model, t_from_g(g), shift=7.0)
    expected = np.diag([1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0])
    upper = [(0, 2, S3 * g), (1, 3, S2 * g), (2, 4, 2 * g), (3, 5, S2 * g), (4, 6, S3 * g)]
    for row, col, coupling in upper:
        expected[row, col] = coupling
        expected[col, row] = -coupling
    assert np.allclose(h.entries, expected, atol=1e-12, rtol=0)
    assert h.trace == pytest.approx(49.0)


def test_dimension_mismatch(n7_model):
    with pytest.raises(DimensionMismatchError):
        assemble_full(6, n7_model, 0.5)


@pytest.mark.parametrize("t", [-0.1, float("nan"), float("inf")])
def test_rejects_bad_coupling(n7_model, t):
    with pytest.raises(InvalidParameterError):
        assemble_full(7, n7_model, t)


def test_parameter_conventions():
    assert t_from_g(1.0) == 0.5
    assert t_from_g(2.0) == 1.0
    assert t_from_kappa(0.0) == 1.0
    assert t_from_kappa(0.5) == pytest.approx(0.75)


def test_entries_are_read_only(n7_model):
    h = assemble_full(7, n7_model, 0.5)
    with pytest.raises(ValueError):
        h.entries[0, 0] = 1.0


@pytest.mark.parametrize("d", _all_decompositions(8), ids=str)
def test_structure_laws(d):
    h0 = assemble_full(d.n, d, 0.0)
    h1 = assemble_full(d.n, d, 1.0)
    h = assemble_full(d.n, d, 0.3)
    # diagonal is the harmonic ladder, off-diagonal part antisymmetric
    assert np.array_equal(np.diag(h.entries), np.asarray(main_diagonal(d.n), dtype=float))
    off = h.entries - np.diag(np.diag(h.entries))
    assert np.allclose(off, -off.T, atol=0, rtol=0)
    # linear in t
    assert np.allclose(h.entries, h0.entries + 0.3 * (h1.entries - h0.entries), atol=1e-14)
    # offsets are exactly the block scales
    expected = {0} | {s * b.scale for b in d.blocks for s in (1, -1)}
    assert offsets(h1) == expected
    assert diagonal_count(h1) == 2 * max(b.scale for b in d.blocks) + 1


def test_diagonal_counts(n4_two_chains, n6_three_chains):
    assert diagonal_count(assemble_full(4, n4_two_chains, 1.0)) == 7
    assert diagonal_count(assemble_full(6, n6_three_chains, 1.0)) == 11
    assert offsets(assemble_full(6, n6_three_chains, 1.0)) == {0, 1, -1, 3, -3, 5, -5}
    assert offsets(assemble_full(6, n6_three_chains, 0.0)) == {0}
    eight = enumerate_decompositions(8)[-1]
    assert eight.k == 4
    assert diagonal_count(assemble_full(8, eight, 1.0)) == 15


def test_split_components_of_n7_model(n7_model):
    odd, even = split_components(assemble_full(7, n7_model, 1.0))
    assert odd.n == 4 and even.n == 3
    assert np.allclose(np.diag(odd.entries, 1), [2 * S3, 4.0, 2 * S3])
    assert np.allclose(np.diag(even.entries, 1), [2 * S2, 2 * S2])


def test_split_components_of_n4(n4_two_chains):
    inner, outer = split_components(assemble_full(4, n4_two_chains, 1.0))
    assert np.allclose(inner.entries, [[-1, 1], [-1, 1]])
    assert np.allclose(outer.entries, [[-3, 3], [-3, 3]])


def test_single_block_component_is_the_matrix():
    d = Decomposition(5, (BlockSpec(5, 1),))
    h = assemble_full(5, d, 0.7, shift=2.0)
    (component,) = split_components(h)
    assert np.array_equal(component.entries, h.entries)


def test_split_components_needs_provenance():
    with pytest.raises(ClassificationRequiredError):
        split_components(HamiltonianMatrix.from_array(np.eye(3)))


@pytest.mark.parametrize("d", _all_decompositions(8), ids=str)
def test_permutation_similarity(d):
    h = assemble_full(d.n, d, 0.8, shift=1.5)
    perm, blocked = block_diagonal(h)
    assert sorted(perm.tolist()) == list(range(d.n))
    expected = scipy.linalg.block_diag(*(build_block(b, 0.8, shift=1.5).entries for b in d.blocks))
    assert np.allclose(blocked, expected, atol=1e-14)
    p = np.eye(d.n)[:, perm]
    assert np.allclose(p.T @ h.entries @ p, blocked, atol=1e-14)


@pytest.mark.parametrize("d", _all_decompositions(8), ids=str)
@pytest.mark.parametrize("t", [0.0, 0.25, 0.5, 0.9])
def test_closed_form_spectrum_in_double_precision(d, t):
    h = assemble_full(d.n, d, t)
    numerical = scipy.linalg.eigvals(h.entries)
    assert match_spectra(numerical, closed_form_spectrum(d, t)) <= 1e-9


@pytest.mark.parametrize("d", _all_decompositions(7), ids=str)
def test_closed_form_spectrum_near_the_ep(d):
    t = 0.99
    h = assemble_full(d.n, d, t)
    with mp.workdps(30):
        values = mp.eig(h.to_mpmath(), left=False, right=False)
        numerical = np.array([complex(v) for v in values])
    assert match_spectra(numerical, closed_form_spectrum(d, t)) <= 1e-9


def test_closed_form_special_points(n7_model):
    assert np.allclose(closed_form_spectrum(n7_model, 1.0), np.zeros(7))
    assert np.allclose(closed_form_spectrum(n7_model, 0.0), main_diagonal(7))
    expected = 7.0 + S3 * np.array([-3, -2, -1, 0, 1, 2, 3])
    assert np.allclose(closed_form_spectrum(n7_model, 0.5, shift=7.0), expected)


def test_closed_form_beyond_the_ep(n7_model):
    values = closed_form_spectrum(n7_model, 1.25)
    assert np.allclose(values.real, 0.0)
    assert np.allclose(sorted(values.imag), 0.75 * np.array([-6, -4, -2, 0, 2, 4, 6]))


def test_sort_spectrum():
    values = sort_spectrum([1 + 1j, -2, 1 - 1j, 0])
    assert values.tolist() == [-2, 0, 1 - 1j, 1 + 1j]


def test_to_mpmath_rebuilds_couplings(n7_model):
    h = assemble_full(7, n7_model, 1.0, shift=7.0)
    with mp.workdps(50):
        m = h.to_mpmath()
        assert m[0, 2] == 2 * mp.sqrt(3)
        assert m[2, 0] == -2 * mp.sqrt(3)
        assert m[3, 3] == 7
        assert float(mp.mnorm(m - mp.matrix(h.entries.tolist()), 1)) < 1e-14


def test_to_mpmath_at_requested_precision(n7_model):
    m = assemble_full(7, n7_model, 1.0).to_mpmath(dps=60)
    with mp.workdps(60):
        assert m[2, 4] == 4
        assert abs(m[0, 2] - 2 * mp.sqrt(3)) < mp.mpf(10) ** -55


def _block_grid():
    return [BlockSpec(size, scale) for size in range(2, 13) for scale in range(1, 6)]


@pytest.mark.parametrize("d", _all_decompositions(8), ids=str)
@pytest.mark.parametrize("t", [0.3, 0.7, 1.3, 2.0])
def test_spectrum_is_closed_under_negation_and_conjugation(d, t):
    h = assemble_full(d.n, d, t)
    values = scipy.linalg.eigvals(h.entries)
    tolerance = 1e-8 * max(h.norm, 1.0)
    assert match_spectra(values, -values) <= tolerance
    assert match_spectra(values, np.conj(values)) <= tolerance
    assert match_spectra(values, closed_form_spectrum(d, t)) <= tolerance


@pytest.mark.parametrize("block", _block_grid(), ids=str)
@pytest.mark.parametrize("t", [0.0, 0.3, 0.7])
def test_block_spectrum_in_double_precision(block, t):
    h = build_block(block, t, shift=1.0)
    expected = 1.0 + np.asarray(block.values, dtype=float) * np.sqrt(1.0 - t * t)
    assert match_spectra(scipy.linalg.eigvals(h.entries), expected) <= 1e-9 * max(block.radius, 1)


@pytest.mark.parametrize("block", _block_grid(), ids=str)
def test_block_spectrum_close_to_the_ep(block):
    t = 0.99
    h = build_block(block, t)
    with mp.workdps(40):
        values = mp.eig(h.to_mpmath(), left=False, right=False)
        numerical = np.array([complex(v) for v in values])
    expected = np.asarray(block.values, dtype=float) * np.sqrt(1.0 - t * t)
    assert match_spectra(numerical, expected) <= 1e-9 * max(block.radius, 1)


@pytest.mark.parametrize("block", _block_grid(), ids=str)
def test_block_at_the_ep_is_nilpotent(block):
    # characteristic polynomial (E - shift)**M: the whole spectrum sits at the shift
    h = build_block(block, 1.0, shift=2.5)
    with mp.workdps(60):
        centered = h.to_mpmath() - mp.mpf(2.5) * mp.eye(block.size)
        assert mp.mnorm(centered ** block.size, 1) < mp.mpf(10) ** -30
        assert mp.mnorm(centered ** (block.size - 1), 1) > 1
