import logging

from app.circuit import Circuit, Gate
from app.enums import GateName

logger = logging.getLogger(__name__)

MAX_ROUNDS = 1000
PHASE_GATES = (GateName.ZPHASE, GateName.XPHASE)


class _Pass:
    """Один проход слева направо: стек последних гейтов на каждом кубите."""

    def __init__(self, qubit_count: int, move_hadamards: bool) -> None:
        self.out: list[Gate | None] = []
        self.stacks: list[list[int]] = [[] for _ in range(qubit_count)]
        self.move_hadamards = move_hadamards

    def _top(self, qubit: int) -> int | None:
        stack = self.stacks[qubit]
        return stack[-1] if stack else None

    def _top_gate(self, qubit: int) -> Gate | None:
        index = self._top(qubit)
        return None if index is None else self.out[index]

    def _pop(self, index: int) -> None:
        gate = self.out[index]
        for qubit in gate.qubits:
            self.stacks[qubit].pop()
        self.out[index] = None

    def _append(self, gate: Gate) -> None:
        index = len(self.out)
        self.out.append(gate)
        for qubit in gate.qubits:
            self.stacks[qubit].append(index)

    def push(self, gate: Gate) -> None:
        if gate.is_two_qubit:
            self._push_two_qubit(gate)
        else:
            self._push_single(gate)

    def _push_single(self, gate: Gate) -> None:
        (qubit,) = gate.qubits
        if gate.phase is not None and gate.phase.is_zero():
            return
        previous = self._top_gate(qubit)
        if previous is None or previous.is_two_qubit or previous.name != gate.name:
            self._append(gate)
            return
        self._pop(self._top(qubit))
        if gate.name in PHASE_GATES:
            merged = gate.phase + previous.phase
            if not merged.is_zero():
                self._push_single(Gate(gate.name, gate.qubits, merged))
        # H·H сокращается без остатка

    def _push_two_qubit(self, gate: Gate) -> None:
        a, b = gate.qubits
        index = self._top(a)
        if index is not None and index == self._top(b) and _cancels(self.out[index], gate):
            self._pop(index)
            return
        if self.move_hadamards and self._delay_hadamard(gate):
            return
        self._append(gate)

    def _delay_hadamard(self, gate: Gate) -> bool:
        control, target = gate.qubits
        if gate.name == GateName.CNOT:
            candidates = [(target, Gate.cz(control, target))]
        elif gate.name == GateName.CZ:
            candidates = [(target, Gate.cnot(control, target)), (control, Gate.cnot(target, control))]
        else:
            return False
        for qubit, replacement in candidates:
            previous = self._top_gate(qubit)
            if previous is not None and previous.name == GateName.H:
                self._pop(self._top(qubit))
                self.push(replacement)
                self.push(Gate.h(qubit))
                return True
        return False

    def result(self) -> list[Gate]:
        return [gate for gate in self.out if gate is not None]


def _cancels(first: Gate, second: Gate) -> bool:
    if first.name != second.name:
        return False
    if first.name == GateName.CNOT:
        return first.qubits == second.qubits
    return set(first.qubits) == set(second.qubits)


def _run(qubit_count: int, gates: list[Gate], move_hadamards: bool) -> list[Gate]:
    state = _Pass(qubit_count, move_hadamards)
    for gate in gates:
        state.push(gate)
    return state.result()


def _adjoint_reversed(gates: list[Gate]) -> list[Gate]:
    return [gate.adjoint() for gate in reversed(gates)]


def peephole_optimize(c: Circuit) -> Circuit:
    gates = list(c.gates)
    for _ in range(MAX_ROUNDS):
        forward = _run(c.qubit_count, gates, move_hadamards=True)
        backward = _adjoint_reversed(_run(c.qubit_count, _adjoint_reversed(forward), move_hadamards=False))
        if backward == gates:
            break
        gates = backward
    else:
        logger.warning("Локальная оптимизация не сошлась за %s проходов", MAX_ROUNDS)
    logger.debug("Локальная оптимизация: %s -> %s гейтов", len(c.gates), len(gates))
    return c.with_gates(gates)
