import pytest

from app.circuit import Circuit, Gate, circuit_to_diagram, gate_stats
from app.enums import EdgeKind, VertexKind
from app.errors import CircuitError
from app.phase import Phase
from tests.helpers import assert_equivalent


@pytest.mark.parametrize(
    "gate",
    [
        Gate.h(0),
        Gate.s(0),
        Gate.t(1),
        Gate.zphase(0, Phase.of(1, 8)),
        Gate.xphase(1, Phase.of(3, 4)),
        Gate.x(0),
        Gate.cnot(0, 1),
        Gate.cnot(1, 0),
        Gate.cz(0, 1),
        Gate.swap(0, 1),
    ],
)
def test_every_gate_translates_faithfully(gate):
    c = Circuit(2, (gate,))
    assert_equivalent(c, circuit_to_diagram(c))


def test_random_circuits_translate_faithfully(circuit_factory):
    for _ in range(5):
        c = circuit_factory(qubits=3, gate_count=25, p_t=0.2, with_swaps=True)
        assert_equivalent(c, circuit_to_diagram(c))


def test_row_hints():
    d = circuit_to_diagram(Circuit(1, (Gate.t(0),)))
    (spider,) = d.spiders()
    assert d.row(d.inputs[0]) == 0
    assert d.row(spider) == 3
    assert d.row(d.outputs[0]) == 6
    assert d.qubit(spider) == 0


def test_cnot_shape():
    d = circuit_to_diagram(Circuit(2, (Gate.cnot(0, 1),)))
    control, target = sorted(d.spiders(), key=d.qubit)
    assert d.kind(control) == VertexKind.Z
    assert d.kind(target) == VertexKind.X
    assert d.edge_kind(control, target) == EdgeKind.SIMPLE
    assert d.row(control) == d.row(target)


def test_gate_stats():
    c = Circuit(2, (Gate.h(0), Gate.t(0), Gate.cnot(0, 1), Gate.tdg(1), Gate.s(1), Gate.cz(1, 0)))
    stats = gate_stats(c)
    assert stats.total == 6
    assert stats.two_qubit == 2
    assert stats.t_like == 2
    assert stats.h_count == 1


def test_adjoint_inverts_circuit(circuit_factory):
    c = circuit_factory(qubits=2, gate_count=15, p_t=0.3)
    assert_equivalent(c.then(c.adjoint()), Circuit(2, ()))


def test_gate_validation():
    with pytest.raises(CircuitError):
        Gate.cnot(1, 1)
    with pytest.raises(CircuitError):
        Gate.h(-1)
    with pytest.raises(CircuitError):
        Circuit(1, (Gate.cz(0, 1),))
    with pytest.raises(CircuitError):
        Circuit(2, ()).then(Circuit(3, ()))


def test_gate_text():
    assert str(Gate.cnot(0, 1)) == "cnot(0,1)"
    assert str(Gate.t(2)) == "zphase[1/4](2)"
    assert Gate.t(0).is_t_like and not Gate.s(0).is_t_like
    assert Gate.tdg(0).adjoint() == Gate.t(0)
