import pytest

from modules.boxed_symbols import BlockSpec, Decomposition


@pytest.fixture
def n7_model():
    """[-6,-2,2,6] (+) [-4,0,4]: the pentadiagonal seven-level model."""
    return Decomposition(n=7, blocks=(BlockSpec(4, 2), BlockSpec(3, 2)))


@pytest.fixture
def n6_three_chains():
    return Decomposition(n=6, blocks=(BlockSpec(2, 1), BlockSpec(2, 3), BlockSpec(2, 5)))


@pytest.fixture
def n4_two_chains():
    return Decomposition(n=4, blocks=(BlockSpec(2, 1), BlockSpec(2, 3)))
