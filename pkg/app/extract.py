"""Извлечение схемы из графовой диаграммы с gFlow.

Гейты снимаются со стороны выходов, поэтому список `emitted` хранит их в обратном
порядке времени; итоговая схема собирается разворотом списка.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

from app.circuit import Circuit, Gate
from app.diagram import ZxDiagram
from app.enums import EdgeKind
from app.errors import ExtractionError
from app.linalg import F2Matrix, RowOpLog, gauss_jordan
from app.phase import ZERO
from app.rules import insert_boundary_dummy, is_graph_like

logger = logging.getLogger(__name__)

Frontier = dict[int, int]


@dataclass(slots=True)
class FrontierTrace:
    qubits: list[int]
    columns: list[int]
    before: F2Matrix
    after: F2Matrix
    ops: RowOpLog
    extracted: list[int]


def _frontier_set(frontier: Frontier) -> set[int]:
    return set(frontier.values())


def _past_neighbours(d: ZxDiagram, frontier: Frontier, v: int) -> set[int]:
    return d.spider_neighbours(v) - _frontier_set(frontier)


def _emit_frontier_cz(d: ZxDiagram, frontier: Frontier, emitted: list[Gate]) -> None:
    for (q, v), (r, w) in combinations(sorted(frontier.items()), 2):
        if d.has_edge(v, w):
            emitted.append(Gate.cz(q, r))
            d.remove_edges(v, w)


def apply_row_operation(
    d: ZxDiagram,
    frontier: Frontier,
    source: int,
    target: int,
    emitted: list[Gate],
) -> None:
    """Прибавляет строку кубита source к строке кубита target и выносит CNOT(target, source)."""
    if source == target:
        raise ExtractionError("Строковая операция требует двух разных кубитов")
    if source not in frontier or target not in frontier:
        raise ExtractionError(f"Нет вершины фронта для кубита {source} или {target}")
    keep = frontier[target]
    for n in sorted(_past_neighbours(d, frontier, frontier[source])):
        d.toggle_hadamard(keep, n)
    emitted.append(Gate.cnot(target, source))


def biadjacency(d: ZxDiagram, frontier: Frontier, qubits: list[int], columns: list[int]) -> F2Matrix:
    index = {v: j for j, v in enumerate(columns)}
    m = F2Matrix.zeros(len(qubits), len(columns))
    for i, q in enumerate(qubits):
        for n in _past_neighbours(d, frontier, frontier[q]):
            if n in index:
                m.bits[i, index[n]] = 1
    return m


def _prepare_frontier(d: ZxDiagram, frontier: Frontier) -> list[int]:
    """Отделяет входы от вершин фронта, у которых ещё есть прошлые соседи."""
    active = []
    for q in sorted(frontier):
        v = frontier[q]
        if not _past_neighbours(d, frontier, v):
            continue
        for b in d.boundary_neighbours(v):
            if b in d.inputs:
                insert_boundary_dummy(d, b)
        active.append(q)
    return active


def _singleton_pairs(m: F2Matrix) -> list[tuple[int, int]]:
    pairs = []
    taken: set[int] = set()
    for i in range(m.rows):
        ones = [j for j in range(m.cols) if m.bits[i, j]]
        if len(ones) == 1 and ones[0] not in taken:
            taken.add(ones[0])
            pairs.append((i, ones[0]))
    return pairs


def update_frontier(
    d: ZxDiagram,
    frontier: Frontier,
    emitted: list[Gate],
    trace: list[FrontierTrace] | None = None,
) -> None:
    active = _prepare_frontier(d, frontier)
    if not active:
        raise ExtractionError(f"Фронт {sorted(frontier.items())} не имеет прошлых соседей")
    columns = sorted(set().union(*(_past_neighbours(d, frontier, frontier[q]) for q in active)))
    m = biadjacency(d, frontier, active, columns)

    full, full_log = gauss_jordan(m)
    candidates = [j for _, j in _singleton_pairs(full)]
    if not candidates:
        raise ExtractionError(
            f"Фронт {sorted(frontier.items())} не продвигается: нет строки с единственной единицей"
        )
    # сокращение только по выбранным столбцам обычно даёт меньше CNOT
    _, log = gauss_jordan(F2Matrix(m.bits[:, candidates]))
    reduced = log.replay(m)
    pairs = _singleton_pairs(reduced)
    if not pairs:
        log, reduced = full_log, full
        pairs = _singleton_pairs(reduced)

    for source, target in log:
        apply_row_operation(d, frontier, active[source], active[target], emitted)

    extracted = []
    for row, column in pairs:
        q = active[row]
        v, w = frontier[q], columns[column]
        output = next(b for b in d.boundary_neighbours(v) if b in d.outputs)
        emitted.append(Gate.h(q))
        if not d.phase(w).is_zero():
            emitted.append(Gate.zphase(q, d.phase(w)))
            d.set_phase(w, ZERO)
        d.remove_vertex(v)
        d.add_edge(w, output, EdgeKind.SIMPLE)
        frontier[q] = w
        extracted.append(w)
    _emit_frontier_cz(d, frontier, emitted)

    if trace is not None:
        trace.append(
            FrontierTrace(qubits=active, columns=columns, before=m, after=reduced, ops=log, extracted=extracted)
        )
    logger.debug("Фронт: %s строковых операций, извлечены %s", len(log), extracted)


def permutation_to_swaps(perm: list[int]) -> list[tuple[int, int]]:
    """SWAP-гейты, которые в порядке времени переносят состояние провода p на провод perm[p]."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ExtractionError(f"{perm} не является перестановкой")
    inverse = [0] * n
    for p, q in enumerate(perm):
        inverse[q] = p
    content = list(range(n))
    where = list(range(n))
    swaps = []
    for q in range(n):
        wanted = inverse[q]
        if content[q] == wanted:
            continue
        other = where[wanted]
        swaps.append((q, other))
        content[q], content[other] = content[other], content[q]
        where[content[q]] = q
        where[content[other]] = other
    return swaps


def _remove_scalars(d: ZxDiagram) -> None:
    for v in d.spiders():
        if not d.neighbours(v):
            d.remove_vertex(v)


def extract_circuit(d: ZxDiagram, trace: list[FrontierTrace] | None = None) -> Circuit:
    report = is_graph_like(d)
    if not report.ok:
        raise ExtractionError("Извлечение требует графового вида: " + "; ".join(report.violations))
    if len(d.inputs) != len(d.outputs):
        raise ExtractionError(f"Число входов {len(d.inputs)} не равно числу выходов {len(d.outputs)}")
    d = d.copy()
    _remove_scalars(d)
    n = len(d.outputs)
    emitted: list[Gate] = []
    frontier: Frontier = {}

    for q, output in enumerate(d.outputs):
        (v,) = d.neighbours(output)
        if d.edge_kind(v, output) == EdgeKind.HADAMARD:
            emitted.append(Gate.h(q))
            d.remove_edges(v, output)
            d.add_edge(v, output, EdgeKind.SIMPLE)
        if not d.phase(v).is_zero():
            emitted.append(Gate.zphase(q, d.phase(v)))
            d.set_phase(v, ZERO)
        frontier[q] = v
    _emit_frontier_cz(d, frontier, emitted)

    while len(d.spiders()) > len(frontier):
        update_frontier(d, frontier, emitted, trace)

    position = {b: p for p, b in enumerate(d.inputs)}
    perm = [0] * n
    hadamards = []
    for q, v in sorted(frontier.items()):
        inputs = [b for b in d.boundary_neighbours(v) if b in position]
        if len(inputs) != 1 or d.spider_neighbours(v):
            raise ExtractionError(f"Вершина фронта {v} на кубите {q} не сводится к проводу")
        perm[position[inputs[0]]] = q
        if d.edge_kind(v, inputs[0]) == EdgeKind.HADAMARD:
            hadamards.append(Gate.h(q))
    emitted.extend(hadamards)
    emitted.extend(Gate.swap(a, b) for a, b in reversed(permutation_to_swaps(perm)))

    circuit = Circuit(n, tuple(reversed(emitted)))
    logger.info("Извлечена схема: %s гейтов на %s кубитах", len(circuit), n)
    return circuit
