import numpy as np
import pytest

from app.circuit import circuit_to_diagram
from app.diagram import ZxDiagram
from app.rules import to_graph_like
from tests.helpers import random_circuit


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20190530)


@pytest.fixture
def circuit_factory(rng):
    def make(qubits: int = 3, gate_count: int = 20, p_t: float = 0.0, with_swaps: bool = False):
        return random_circuit(rng, qubits, gate_count, p_t, with_swaps)

    return make


@pytest.fixture
def graph_like_factory(circuit_factory):
    def make(qubits: int = 3, gate_count: int = 20, p_t: float = 0.0) -> ZxDiagram:
        return to_graph_like(circuit_to_diagram(circuit_factory(qubits, gate_count, p_t)))

    return make
