"""Нормальная форма клиффордовых диаграмм без внутренних пауков.

Каждый паук связан ровно с одной границей. Слои в порядке времени:
H, S, CZ на входах, CNOT-сеть чётности, H на всех кубитах, CZ, S, H на выходах.
"""

import logging
from itertools import combinations

from app.circuit import Circuit, Gate
from app.diagram import ZxDiagram
from app.enums import NORMAL_FORM_ORDER, EdgeKind, NormalFormLayer, VertexKind
from app.errors import ExtractionError, RewriteError
from app.linalg import F2Matrix, parity_to_cnots
from app.rules import is_graph_like
from app.schemas import LayerDocument
from app.simplify import is_boundary_spider, lc_simp

logger = logging.getLogger(__name__)

Layers = list[tuple[NormalFormLayer, list[Gate]]]


def _boundary_spiders(d: ZxDiagram, boundaries: list[int]) -> list[int]:
    return [next(iter(d.neighbours(b))) for b in boundaries]


def _check_gslc(d: ZxDiagram) -> None:
    report = is_graph_like(d)
    if not report.ok:
        raise ExtractionError("Нормальная форма требует графового вида: " + "; ".join(report.violations))
    if len(d.inputs) != len(d.outputs):
        raise ExtractionError(f"Число входов {len(d.inputs)} не равно числу выходов {len(d.outputs)}")
    interior = [v for v in d.spiders() if not is_boundary_spider(d, v)]
    if interior:
        raise ExtractionError(f"В диаграмме остались внутренние пауки {interior}")


def _boundary_kind(d: ZxDiagram, spider: int) -> EdgeKind:
    (boundary,) = d.boundary_neighbours(spider)
    return d.edge_kind(spider, boundary)


def _local_gates(d: ZxDiagram, spiders: list[int]) -> tuple[list[Gate], list[Gate]]:
    hadamards = [Gate.h(q) for q, v in enumerate(spiders) if _boundary_kind(d, v) == EdgeKind.HADAMARD]
    phases = [Gate.zphase(q, d.phase(v)) for q, v in enumerate(spiders) if not d.phase(v).is_zero()]
    return hadamards, phases


def _cz_layer(d: ZxDiagram, spiders: list[int]) -> list[Gate]:
    return [Gate.cz(a, b) for (a, u), (b, v) in combinations(enumerate(spiders), 2) if d.has_edge(u, v)]


def extract_gslc_layers(d: ZxDiagram) -> Layers:
    _check_gslc(d)
    left = _boundary_spiders(d, d.inputs)
    right = _boundary_spiders(d, d.outputs)
    n = len(left)

    h_in, s_in = _local_gates(d, left)
    h_out, s_out = _local_gates(d, right)
    parity = F2Matrix.from_rows([[int(d.has_edge(o, i)) for i in left] for o in right], cols=n)
    layers = {
        NormalFormLayer.H_IN: h_in,
        NormalFormLayer.S_IN: s_in,
        NormalFormLayer.CZ_IN: _cz_layer(d, left),
        NormalFormLayer.CNOT: parity_to_cnots(parity),
        NormalFormLayer.H_MID: [Gate.h(q) for q in range(n)],
        NormalFormLayer.CZ_OUT: _cz_layer(d, right),
        NormalFormLayer.S_OUT: s_out,
        NormalFormLayer.H_OUT: h_out,
    }
    logger.debug("Нормальная форма: %s", {layer.value: len(gates) for layer, gates in layers.items()})
    return [(layer, layers[layer]) for layer in NORMAL_FORM_ORDER]


def extract_gslc_normal_form(d: ZxDiagram) -> Circuit:
    layers = extract_gslc_layers(d)
    return Circuit(len(d.inputs), tuple(gate for _, gates in layers for gate in gates))


def layer_documents(layers: Layers) -> list[LayerDocument]:
    return [LayerDocument(layer=layer, gates=[str(gate) for gate in gates]) for layer, gates in layers]


# ─── Сокращение локальных клиффордов ───


def local_clifford_violations(d: ZxDiagram) -> list[str]:
    """Границы, чей локальный клиффорд вне наборов {Sⁿ, H, ZH} и {Sⁿ, H, HZ}."""
    violations = []
    for b in d.inputs + d.outputs:
        (v,) = d.neighbours(b)
        if d.is_boundary(v):
            continue
        phase = d.phase(v)
        if not phase.is_clifford():
            violations.append(f"у паука {v} неклиффордова фаза {phase}")
        elif d.edge_kind(v, b) == EdgeKind.HADAMARD and not phase.is_pauli():
            violations.append(f"у паука {v} адамарово ребро к границе {b} и фаза {phase}")
    return violations


def _reducible(d: ZxDiagram, b: int) -> int | None:
    (v,) = d.neighbours(b)
    if d.is_boundary(v) or d.edge_kind(v, b) != EdgeKind.HADAMARD:
        return None
    phase = d.phase(v)
    if not phase.is_clifford():
        raise RewriteError(f"У граничного паука {v} неклиффордова фаза {phase}")
    return v if phase.is_proper_clifford() else None


def reduce_local_cliffords(d: ZxDiagram) -> ZxDiagram:
    """Каждый шаг заменяет адамарово граничное ребро простым, поэтому цикл конечен."""
    d = d.copy()
    _check_gslc(d)
    applied = 0
    while True:
        found = next(
            ((b, v) for b in d.inputs + d.outputs if (v := _reducible(d, b)) is not None),
            None,
        )
        if found is None:
            break
        b, v = found
        fresh = d.add_vertex(VertexKind.Z, qubit=d.qubit(b), row=d.row(v))
        d.remove_edges(b, v)
        d.add_edge(b, fresh, EdgeKind.SIMPLE)
        d.add_edge(fresh, v, EdgeKind.HADAMARD)
        lc_simp(d, v)
        applied += 1
    logger.debug("Сокращение локальных клиффордов: %s локальных дополнений", applied)
    return d
