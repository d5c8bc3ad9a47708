import pytest

from mfplan.blocksim import generate_block_circuit
from mfplan.config import SearchConfig
from mfplan.planner import reference


@pytest.fixture(scope="session")
def published_volumes():
    return reference.VOLUMES


@pytest.fixture(scope="session")
def published_italics():
    return reference.ITALIC


@pytest.fixture(scope="session")
def published_transitions():
    return reference.BOLD


@pytest.fixture(scope="session")
def small_search():
    return SearchConfig(eps_min=0.25, eps_max=4.0, eps_points=9, k_min=2, k_max=12)


@pytest.fixture(scope="session")
def circuit_k2():
    return generate_block_circuit(2)


@pytest.fixture(scope="session")
def circuit_k4():
    return generate_block_circuit(4)
