import numpy as np

from app.circuit import Circuit, Gate
from app.diagram import ZxDiagram
from app.phase import Phase
from app.semantics import circuit_to_matrix, diagram_to_matrix, equal_up_to_global_phase

NON_CLIFFORD_PHASES = [Phase.of(1, 4), Phase.of(3, 4), Phase.of(5, 4), Phase.of(7, 4), Phase.of(1, 8)]


def random_circuit(
    rng: np.random.Generator,
    qubits: int,
    gate_count: int,
    p_t: float = 0.0,
    with_swaps: bool = False,
) -> Circuit:
    """Случайная схема над полным алфавитом гейтов, включая X-вращения."""
    gates = []
    for _ in range(gate_count):
        if rng.random() < p_t:
            phase = NON_CLIFFORD_PHASES[int(rng.integers(len(NON_CLIFFORD_PHASES)))]
            q = int(rng.integers(qubits))
            gates.append(Gate.zphase(q, phase) if rng.random() < 0.7 else Gate.xphase(q, phase))
            continue
        choices = 5 if qubits > 1 else 3
        if with_swaps and qubits > 1:
            choices += 1
        kind = int(rng.integers(choices))
        q = int(rng.integers(qubits))
        if kind == 0:
            gates.append(Gate.h(q))
        elif kind == 1:
            gates.append(Gate.zphase(q, Phase.of(int(rng.integers(4)), 2)))
        elif kind == 2:
            gates.append(Gate.xphase(q, Phase.of(int(rng.integers(4)), 2)))
        else:
            a, b = (int(x) for x in rng.choice(qubits, size=2, replace=False))
            gates.append([Gate.cnot, Gate.cz, Gate.swap][kind - 3](a, b))
    return Circuit(qubits, tuple(gates))


def matrix_of(item: Circuit | ZxDiagram) -> np.ndarray:
    if isinstance(item, Circuit):
        return circuit_to_matrix(item)
    return diagram_to_matrix(item)


def assert_equivalent(a: Circuit | ZxDiagram, b: Circuit | ZxDiagram, tol: float = 1e-9) -> None:
    first, second = matrix_of(a), matrix_of(b)
    assert first.shape == second.shape
    assert equal_up_to_global_phase(first, second, tol)
