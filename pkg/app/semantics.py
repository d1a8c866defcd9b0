"""Плотная матричная семантика диаграмм и схем.

Порядок кубитов big-endian: кубит 0 соответствует старшему биту. Строки матрицы
нумеруют выходы, столбцы нумеруют входы.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

import numpy as np

from app.circuit import Circuit, Gate
from app.config import settings
from app.diagram import ZxDiagram
from app.enums import EdgeKind, GateName, VertexKind
from app.errors import OracleError

logger = logging.getLogger(__name__)

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
IDENTITY = np.eye(2, dtype=complex)
CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex,
)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)
SWAP_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)


class ContractionOrder(str, Enum):
    GREEDY = "greedy"
    SEQUENTIAL = "sequential"


@dataclass(slots=True)
class _Tensor:
    data: np.ndarray
    legs: list[int]


def spider_tensor(kind: VertexKind, phase_radians: float, arity: int) -> np.ndarray:
    if arity == 0:
        return np.array(1 + np.exp(1j * phase_radians), dtype=complex)
    tensor = np.zeros((2,) * arity, dtype=complex)
    tensor[(0,) * arity] = 1
    tensor[(1,) * arity] = np.exp(1j * phase_radians)
    if kind == VertexKind.X:
        for axis in range(arity):
            tensor = np.moveaxis(np.tensordot(H_MATRIX, tensor, axes=([1], [axis])), 0, axis)
    return tensor


def _build_network(d: ZxDiagram, max_arity: int) -> tuple[list[_Tensor], list[int], list[int]]:
    legs_of: dict[int, list[int]] = {v: [] for v in d.vertices()}
    hadamard_legs: set[tuple[int, int]] = set()

    for leg, (u, v, kind) in enumerate(d.edges()):
        legs_of[u].append(leg)
        legs_of[v].append(leg)
        if kind == EdgeKind.HADAMARD:
            # адамар поглощается тензором вершины u
            hadamard_legs.add((u, len(legs_of[u]) - 1))

    tensors: list[_Tensor] = []
    open_legs: dict[int, int] = {}
    next_leg = len(d.edges())
    for v in d.vertices():
        if d.is_boundary(v):
            open_legs[v] = next_leg
            data = IDENTITY.copy()
            legs = [next_leg, *legs_of[v]]
            next_leg += 1
            if (v, 0) in hadamard_legs:
                data = H_MATRIX.copy()
            tensors.append(_Tensor(data, legs))
            continue
        arity = len(legs_of[v])
        if arity > max_arity:
            raise OracleError(f"Паук {v} имеет {arity} ног, больше предела {max_arity}")
        data = spider_tensor(d.kind(v), d.phase(v).radians, arity)
        for axis in range(arity):
            if (v, axis) in hadamard_legs:
                data = np.moveaxis(np.tensordot(H_MATRIX, data, axes=([1], [axis])), 0, axis)
        tensors.append(_Tensor(data, list(legs_of[v])))

    outputs = [open_legs[b] for b in d.outputs]
    inputs = [open_legs[b] for b in d.inputs]
    return tensors, outputs, inputs


def _contract_pair(a: _Tensor, b: _Tensor) -> _Tensor:
    shared = [leg for leg in a.legs if leg in b.legs]
    axes_a = [a.legs.index(leg) for leg in shared]
    axes_b = [b.legs.index(leg) for leg in shared]
    data = np.tensordot(a.data, b.data, axes=(axes_a, axes_b))
    legs = [leg for leg in a.legs if leg not in shared] + [leg for leg in b.legs if leg not in shared]
    return _Tensor(data, legs)


def _trace_duplicates(t: _Tensor) -> _Tensor:
    while True:
        seen: dict[int, int] = {}
        pair = None
        for index, leg in enumerate(t.legs):
            if leg in seen:
                pair = (seen[leg], index)
                break
            seen[leg] = index
        if pair is None:
            return t
        data = np.trace(t.data, axis1=pair[0], axis2=pair[1])
        legs = [leg for index, leg in enumerate(t.legs) if index not in pair]
        t = _Tensor(data, legs)


def _partners(pool: dict[int, _Tensor], owners: dict[int, set[int]], i: int) -> set[int]:
    result: set[int] = set()
    for leg in pool[i].legs:
        result.update(owners[leg])
    result.discard(i)
    return result


def _pick_greedy(pool: dict[int, _Tensor], owners: dict[int, set[int]], last: int) -> tuple[int, int]:
    best = None
    for i in pool:
        legs_i = set(pool[i].legs)
        for j in _partners(pool, owners, i):
            if j < i:
                continue
            shared = len(legs_i.intersection(pool[j].legs))
            key = (len(pool[i].legs) + len(pool[j].legs) - 2 * shared, i, j)
            if best is None or key < best:
                best = key
    if best is None:
        first, second = sorted(pool)[:2]
        return first, second
    return best[1], best[2]


def _pick_sequential(pool: dict[int, _Tensor], owners: dict[int, set[int]], last: int) -> tuple[int, int]:
    anchor = last if last in pool else min(pool)
    partners = _partners(pool, owners, anchor)
    if partners:
        return anchor, min(partners)
    return anchor, min(key for key in pool if key != anchor)


def _contract(tensors: list[_Tensor], order: ContractionOrder, max_intermediate: int) -> _Tensor:
    pool = {index: _trace_duplicates(t) for index, t in enumerate(tensors)}
    owners: dict[int, set[int]] = defaultdict(set)
    for index, t in pool.items():
        for leg in t.legs:
            owners[leg].add(index)
    picker = _pick_greedy if order == ContractionOrder.GREEDY else _pick_sequential
    next_id = len(tensors)
    last = -1
    while len(pool) > 1:
        i, j = picker(pool, owners, last)
        a, b = pool.pop(i), pool.pop(j)
        merged = _trace_duplicates(_contract_pair(a, b))
        if len(merged.legs) > max_intermediate:
            raise OracleError(
                f"Промежуточный тензор имеет {len(merged.legs)} ног, больше предела {max_intermediate}"
            )
        for leg in a.legs + b.legs:
            owners[leg].discard(i)
            owners[leg].discard(j)
        for leg in merged.legs:
            owners[leg].add(next_id)
        pool[next_id] = merged
        last = next_id
        next_id += 1
    if not pool:
        return _Tensor(np.array(1, dtype=complex), [])
    return next(iter(pool.values()))


def diagram_to_matrix(
    d: ZxDiagram,
    order: ContractionOrder = ContractionOrder.GREEDY,
    max_wires: int | None = None,
    max_intermediate: int | None = None,
) -> np.ndarray:
    wire_cap = settings.oracle_max_wires if max_wires is None else max_wires
    leg_cap = settings.oracle_max_intermediate if max_intermediate is None else max_intermediate
    wires = len(d.inputs) + len(d.outputs)
    if wires > wire_cap:
        raise OracleError(f"Диаграмма имеет {wires} внешних проводов, предел {wire_cap}")

    tensors, outputs, inputs = _build_network(d, max(leg_cap, wire_cap))
    result = _contract(tensors, order, max(leg_cap, wire_cap))
    wanted = outputs + inputs
    data = np.transpose(result.data, [result.legs.index(leg) for leg in wanted]) if wanted else result.data
    return np.asarray(data, dtype=complex).reshape(2 ** len(outputs), 2 ** len(inputs))


# ─── Схемы ───


def gate_matrix(gate: Gate) -> np.ndarray:
    if gate.name == GateName.H:
        return H_MATRIX
    if gate.name == GateName.ZPHASE:
        return np.diag([1, np.exp(1j * gate.phase.radians)]).astype(complex)
    if gate.name == GateName.XPHASE:
        z = np.diag([1, np.exp(1j * gate.phase.radians)]).astype(complex)
        return H_MATRIX @ z @ H_MATRIX
    if gate.name == GateName.CNOT:
        return CNOT_MATRIX
    if gate.name == GateName.CZ:
        return CZ_MATRIX
    return SWAP_MATRIX


def circuit_to_matrix(c: Circuit, max_qubits: int | None = None) -> np.ndarray:
    cap = settings.oracle_max_wires // 2 if max_qubits is None else max_qubits
    n = c.qubit_count
    if n > cap:
        raise OracleError(f"Схема на {n} кубитах превышает предел {cap}")
    dim = 2**n
    state = np.eye(dim, dtype=complex).reshape((2,) * (2 * n))
    for gate in c.gates:
        k = len(gate.qubits)
        op = gate_matrix(gate).reshape((2,) * (2 * k))
        state = np.tensordot(op, state, axes=(list(range(k, 2 * k)), list(gate.qubits)))
        state = np.moveaxis(state, list(range(k)), list(gate.qubits))
    return state.reshape(dim, dim)


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> bool:
    tolerance = settings.oracle_tolerance if tol is None else tol
    if a.shape != b.shape:
        raise OracleError(f"Размерности не совпадают: {a.shape} и {b.shape}")
    if a.size == 0:
        return True
    index = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    scale_a = a[index]
    scale_b = b[index]
    tiny = 1e-12
    if abs(scale_a) < tiny:
        return bool(np.max(np.abs(b)) < tiny)
    if abs(scale_b) < tiny:
        return False
    difference = np.max(np.abs(a / scale_a - b / scale_b))
    return bool(difference <= tolerance)


def diagrams_equivalent(a: ZxDiagram, b: ZxDiagram, tol: float | None = None) -> bool:
    return equal_up_to_global_phase(diagram_to_matrix(a), diagram_to_matrix(b), tol)


def circuits_equivalent(a: Circuit, b: Circuit, tol: float | None = None) -> bool:
    if a.qubit_count != b.qubit_count:
        return False
    return equal_up_to_global_phase(circuit_to_matrix(a), circuit_to_matrix(b), tol)
