import numpy as np
import pytest

from modules.boxed_symbols import BlockSpec, Decomposition
from modules.certification import geometric_multiplicity, numerical_rank
from modules.certification.multiplicity import default_rank_tolerance
from modules.errors import DimensionMismatchError
from modules.hamiltonian_builder import assemble_full
from modules.scenario_enumerator import enumerate_decompositions


def test_numerical_rank():
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.diag([1.0, 1e-3, 1e-15])) == 2
    assert numerical_rank(np.diag([1.0, 1e-3, 1e-15]), tol_rank=1e-2) == 1


def test_default_tolerance_scales_with_n():
    assert default_rank_tolerance(8) == 8 * 2.0 ** -40


def test_n7_model_has_two_chains(n7_model):
    assert geometric_multiplicity(assemble_full(7, n7_model, 1.0), 0.0) == 2
    assert geometric_multiplicity(assemble_full(7, n7_model, 1.0, shift=7.0), 7.0) == 2


def test_n6_has_three_chains(n6_three_chains):
    assert geometric_multiplicity(assemble_full(6, n6_three_chains, 1.0), 0.0) == 3


@pytest.mark.parametrize("size", range(2, 9))
def test_single_block_has_one_chain(size):
    d = Decomposition(size, (BlockSpec(size, 1),))
    assert geometric_multiplicity(assemble_full(size, d, 1.0), 0.0) == 1


def test_not_an_eigenvalue(n7_model):
    assert geometric_multiplicity(assemble_full(7, n7_model, 1.0), 0.5) == 0


def test_inside_the_corridor_levels_are_simple(n7_model):
    h = assemble_full(7, n7_model, 0.5, shift=7.0)
    assert geometric_multiplicity(h, 7.0) == 1


@pytest.mark.parametrize("d", [d for n in range(2, 11) for d in enumerate_decompositions(n)], ids=str)
def test_multiplicity_equals_block_count(d):
    assert geometric_multiplicity(assemble_full(d.n, d, 1.0), 0.0) == d.k


def test_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        geometric_multiplicity(np.ones((2, 3)), 0.0)
