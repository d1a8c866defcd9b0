import logging
from dataclasses import dataclass, field
from pathlib import Path

from app.circuit import Circuit, circuit_to_diagram, gate_stats
from app.config import settings
from app.diagram import ZxDiagram
from app.errors import CircuitError
from app.extract import extract_circuit
from app.normal_form import Layers, extract_gslc_layers, extract_gslc_normal_form, reduce_local_cliffords
from app.peephole import peephole_optimize
from app.qasm import parse_qasm
from app.rules import to_graph_like
from app.schemas import OptimizeReport, SimpStep
from app.semantics import circuits_equivalent
from app.simplify import clifford_simp, interior_spiders

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class OptimizeOutcome:
    circuit: Circuit
    report: OptimizeReport
    steps: list[SimpStep] = field(default_factory=list)
    layers: Layers | None = None


def load_circuit(path: str | Path) -> Circuit:
    return parse_qasm(Path(path).read_text(encoding="utf-8"))


def simplify_circuit(c: Circuit, steps: list[SimpStep] | None = None) -> ZxDiagram:
    diagram = to_graph_like(circuit_to_diagram(c), steps)
    result = clifford_simp(diagram)
    if steps is not None:
        steps.extend(result.steps)
    return result.diagram


def _is_gslc(d: ZxDiagram) -> bool:
    return not interior_spiders(d) and all(d.phase(v).is_clifford() for v in d.spiders())


def _no_worse(candidate: Circuit, reference: Circuit) -> bool:
    a, b = gate_stats(candidate), gate_stats(reference)
    return a.total <= b.total and a.two_qubit <= b.two_qubit


def full_optimize(c: Circuit, steps: list[SimpStep] | None = None) -> Circuit:
    """Извлечение по фронту; у клиффордовых диаграмм ещё и нормальная форма, берётся не худшая."""
    simplified = simplify_circuit(c, steps)
    extracted = peephole_optimize(extract_circuit(simplified))
    if not _is_gslc(simplified):
        return extracted
    normal = peephole_optimize(extract_gslc_normal_form(reduce_local_cliffords(simplified)))
    if _no_worse(extracted, normal):
        return extracted
    logger.debug(
        "Нормальная форма короче извлечения: %s против %s гейтов",
        len(normal.gates),
        len(extracted.gates),
    )
    return normal


def clifford_layers(c: Circuit, steps: list[SimpStep] | None = None) -> Layers:
    if any(not gate.is_clifford for gate in c.gates):
        raise CircuitError("Нормальная форма строится только для клиффордовых схем")
    return extract_gslc_layers(reduce_local_cliffords(simplify_circuit(c, steps)))


def clifford_normal_form(c: Circuit, steps: list[SimpStep] | None = None) -> Circuit:
    layers = clifford_layers(c, steps)
    return Circuit(c.qubit_count, tuple(gate for _, gates in layers for gate in gates))


def can_verify(c: Circuit) -> bool:
    return c.qubit_count <= settings.verify_max_qubits


def verify_equivalent(a: Circuit, b: Circuit, tol: float | None = None) -> bool:
    equal = circuits_equivalent(a, b, tol)
    logger.debug("Проверка эквивалентности на %s кубитах: %s", a.qubit_count, equal)
    return equal


def optimize_report(before: Circuit, after: Circuit, verified: bool | None) -> OptimizeReport:
    if verified is None:
        message = f"Проверка пропущена: больше {settings.verify_max_qubits} кубитов"
    elif verified:
        message = "Схемы эквивалентны с точностью до глобальной фазы"
    else:
        message = "Оптимизированная схема не совпадает с исходной"
    return OptimizeReport(before=gate_stats(before), after=gate_stats(after), verified=verified, message=message)


def optimize(c: Circuit, clifford_nf: bool = False) -> OptimizeOutcome:
    steps: list[SimpStep] = []
    layers = None
    if clifford_nf:
        layers = clifford_layers(c, steps)
        result = Circuit(c.qubit_count, tuple(gate for _, gates in layers for gate in gates))
    else:
        result = full_optimize(c, steps)
    verified = verify_equivalent(c, result) if can_verify(c) else None
    report = optimize_report(c, result, verified)
    logger.info(
        "Оптимизация: %s -> %s гейтов, двухкубитных %s -> %s",
        report.before.total,
        report.after.total,
        report.before.two_qubit,
        report.after.two_qubit,
    )
    return OptimizeOutcome(circuit=result, report=report, steps=steps, layers=layers)
