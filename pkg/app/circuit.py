from collections.abc import Iterable
from dataclasses import dataclass

from app.diagram import ZxDiagram
from app.enums import TWO_QUBIT_GATES, EdgeKind, GateName, VertexKind
from app.errors import CircuitError
from app.phase import HALF_PI, PI, QUARTER_PI, ZERO, Phase
from app.schemas import GateStats

INPUT_ROW = 0
FIRST_CURSOR = 2
OUTPUT_GAP = 3


@dataclass(frozen=True, slots=True)
class Gate:
    name: GateName
    qubits: tuple[int, ...]
    phase: Phase | None = None

    def __post_init__(self) -> None:
        expected = 2 if self.name in TWO_QUBIT_GATES else 1
        if len(self.qubits) != expected:
            raise CircuitError(f"Гейт {self.name.value} ожидает {expected} кубит(а)")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"Кубиты гейта {self.name.value} должны различаться")
        if any(q < 0 for q in self.qubits):
            raise CircuitError("Номер кубита не может быть отрицательным")
        has_phase = self.name in (GateName.ZPHASE, GateName.XPHASE)
        if has_phase != (self.phase is not None):
            raise CircuitError(f"Фаза задаётся только для вращений, гейт {self.name.value}")

    @classmethod
    def h(cls, qubit: int) -> "Gate":
        return cls(GateName.H, (qubit,))

    @classmethod
    def zphase(cls, qubit: int, phase: Phase) -> "Gate":
        return cls(GateName.ZPHASE, (qubit,), phase)

    @classmethod
    def xphase(cls, qubit: int, phase: Phase) -> "Gate":
        return cls(GateName.XPHASE, (qubit,), phase)

    @classmethod
    def s(cls, qubit: int) -> "Gate":
        return cls.zphase(qubit, HALF_PI)

    @classmethod
    def sdg(cls, qubit: int) -> "Gate":
        return cls.zphase(qubit, -HALF_PI)

    @classmethod
    def t(cls, qubit: int) -> "Gate":
        return cls.zphase(qubit, QUARTER_PI)

    @classmethod
    def tdg(cls, qubit: int) -> "Gate":
        return cls.zphase(qubit, -QUARTER_PI)

    @classmethod
    def z(cls, qubit: int) -> "Gate":
        return cls.zphase(qubit, PI)

    @classmethod
    def x(cls, qubit: int) -> "Gate":
        return cls.xphase(qubit, PI)

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls(GateName.CNOT, (control, target))

    @classmethod
    def cz(cls, a: int, b: int) -> "Gate":
        return cls(GateName.CZ, (a, b))

    @classmethod
    def swap(cls, a: int, b: int) -> "Gate":
        return cls(GateName.SWAP, (a, b))

    @property
    def is_two_qubit(self) -> bool:
        return self.name in TWO_QUBIT_GATES

    @property
    def is_t_like(self) -> bool:
        return self.phase is not None and not self.phase.is_clifford()

    @property
    def is_clifford(self) -> bool:
        return not self.is_t_like

    def adjoint(self) -> "Gate":
        if self.phase is None:
            return self
        return Gate(self.name, self.qubits, -self.phase)

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.phase is None:
            return f"{self.name.value}({args})"
        return f"{self.name.value}[{self.phase}]({args})"


@dataclass(frozen=True, slots=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        if self.qubit_count < 0:
            raise CircuitError("Число кубитов не может быть отрицательным")
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if max(gate.qubits) >= self.qubit_count:
                raise CircuitError(f"Гейт {gate} выходит за пределы {self.qubit_count} кубитов")

    @classmethod
    def of(cls, qubit_count: int, gates: Iterable[Gate] = ()) -> "Circuit":
        return cls(qubit_count, tuple(gates))

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.qubit_count, tuple(gates))

    def then(self, other: "Circuit") -> "Circuit":
        if other.qubit_count != self.qubit_count:
            raise CircuitError("Нельзя соединить схемы разной ширины")
        return Circuit(self.qubit_count, self.gates + other.gates)

    def adjoint(self) -> "Circuit":
        return Circuit(self.qubit_count, tuple(gate.adjoint() for gate in reversed(self.gates)))

    def __len__(self) -> int:
        return len(self.gates)


def gate_stats(c: Circuit) -> GateStats:
    return GateStats(
        total=len(c.gates),
        two_qubit=sum(1 for gate in c.gates if gate.is_two_qubit),
        t_like=sum(1 for gate in c.gates if gate.is_t_like),
        h_count=sum(1 for gate in c.gates if gate.name == GateName.H),
    )


def circuit_to_diagram(c: Circuit) -> ZxDiagram:
    """Строит диаграмму по схеме, записывая для каждого паука кубит и номер строки.

    Входы стоят в строке 0, первый гейт в строке 3, выходы на три строки правее
    последнего гейта; промежутки оставлены для фиктивных пауков у границ.
    """
    d = ZxDiagram()
    last = [d.add_input(qubit=q, row=INPUT_ROW) for q in range(c.qubit_count)]
    pending_h = [False] * c.qubit_count
    cursor = [FIRST_CURSOR] * c.qubit_count

    def attach(qubit: int, vertex: int) -> None:
        kind = EdgeKind.HADAMARD if pending_h[qubit] else EdgeKind.SIMPLE
        d.add_edge(last[qubit], vertex, kind)
        pending_h[qubit] = False
        last[qubit] = vertex

    def place(kind: VertexKind, qubit: int, row: int, phase: Phase = ZERO) -> int:
        vertex = d.add_vertex(kind, phase, qubit=qubit, row=row)
        attach(qubit, vertex)
        cursor[qubit] = row
        return vertex

    def controlled(control: int, target: int, target_kind: VertexKind, edge: EdgeKind) -> None:
        row = max(cursor[control], cursor[target]) + 1
        a = place(VertexKind.Z, control, row)
        b = place(target_kind, target, row)
        d.add_edge(a, b, edge)

    for gate in c.gates:
        if gate.name == GateName.H:
            (q,) = gate.qubits
            pending_h[q] = not pending_h[q]
        elif gate.name == GateName.ZPHASE:
            (q,) = gate.qubits
            place(VertexKind.Z, q, cursor[q] + 1, gate.phase)
        elif gate.name == GateName.XPHASE:
            (q,) = gate.qubits
            pending_h[q] = not pending_h[q]
            place(VertexKind.Z, q, cursor[q] + 1, gate.phase)
            pending_h[q] = True
        elif gate.name == GateName.CNOT:
            controlled(*gate.qubits, VertexKind.X, EdgeKind.SIMPLE)
        elif gate.name == GateName.CZ:
            controlled(*gate.qubits, VertexKind.Z, EdgeKind.HADAMARD)
        elif gate.name == GateName.SWAP:
            a, b = gate.qubits
            controlled(a, b, VertexKind.X, EdgeKind.SIMPLE)
            controlled(b, a, VertexKind.X, EdgeKind.SIMPLE)
            controlled(a, b, VertexKind.X, EdgeKind.SIMPLE)

    output_row = max(cursor, default=FIRST_CURSOR) + OUTPUT_GAP
    for q in range(c.qubit_count):
        attach(q, d.add_output(qubit=q, row=output_row))
    return d
