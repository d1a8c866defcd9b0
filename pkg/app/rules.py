"""Базовые правила ZX-исчисления и приведение диаграммы к графовому виду.

Правила меняют переданную диаграмму на месте и возвращают её же; функции-конвейеры
(`to_graph_like`) работают с копией.
"""

import logging

from app.diagram import ZxDiagram
from app.enums import VERTEX_KIND_LABELS, EdgeKind, StepKind, VertexKind
from app.errors import RewriteError
from app.phase import PI
from app.schemas import GraphLikeReport, SimpStep

logger = logging.getLogger(__name__)


def _require_spider(d: ZxDiagram, v: int) -> None:
    if v not in d:
        raise RewriteError(f"Вершина {v} отсутствует")
    if d.is_boundary(v):
        raise RewriteError(f"Вершина {v} является границей, а не пауком")


# ─── Правила рисунка ───


def fuse(d: ZxDiagram, u: int, v: int) -> ZxDiagram:
    _require_spider(d, u)
    _require_spider(d, v)
    if u == v:
        raise RewriteError("Нельзя слить паука с самим собой")
    if d.kind(u) != d.kind(v):
        kinds = f"{VERTEX_KIND_LABELS[d.kind(u)]} и {VERTEX_KIND_LABELS[d.kind(v)]}"
        raise RewriteError(f"Пауки {u} и {v} разного цвета: {kinds}")
    simple, hadamard = d.edge_counts(u, v)
    if simple == 0:
        raise RewriteError(f"Пауки {u} и {v} не соединены простым ребром")

    keep, gone = min(u, v), max(u, v)
    d.remove_edges(keep, gone)
    # оставшиеся рёбра между ними превращаются в петли
    if simple - 1:
        d.add_edge(keep, keep, EdgeKind.SIMPLE, simple - 1)
    if hadamard:
        d.add_edge(keep, keep, EdgeKind.HADAMARD, hadamard)
    loops_simple, loops_hadamard = d.self_loops(gone)
    if loops_simple:
        d.add_edge(keep, keep, EdgeKind.SIMPLE, loops_simple)
    if loops_hadamard:
        d.add_edge(keep, keep, EdgeKind.HADAMARD, loops_hadamard)
    for neighbour in sorted(d.neighbours(gone)):
        n_simple, n_hadamard = d.edge_counts(gone, neighbour)
        if n_simple:
            d.add_edge(keep, neighbour, EdgeKind.SIMPLE, n_simple)
        if n_hadamard:
            d.add_edge(keep, neighbour, EdgeKind.HADAMARD, n_hadamard)

    kept = d.vertex(keep)
    removed = d.vertex(gone)
    kept.phase = kept.phase + removed.phase
    if removed.row is not None:
        kept.row = removed.row if kept.row is None else max(kept.row, removed.row)
    if kept.qubit is None:
        kept.qubit = removed.qubit
    d.remove_vertex(gone)
    return d


def color_change(d: ZxDiagram, v: int) -> ZxDiagram:
    _require_spider(d, v)
    d.set_kind(v, VertexKind.Z if d.kind(v) == VertexKind.X else VertexKind.X)
    # петля получает адамар с обеих сторон, поэтому её вид не меняется
    for neighbour in d.neighbours(v):
        simple, hadamard = d.edge_counts(v, neighbour)
        d.set_edge_counts(v, neighbour, hadamard, simple)
    return d


def remove_identity(d: ZxDiagram, v: int) -> ZxDiagram:
    _require_spider(d, v)
    if not d.phase(v).is_zero():
        raise RewriteError(f"У паука {v} ненулевая фаза")
    if d.degree(v) != 2 or d.self_loops(v) != (0, 0):
        raise RewriteError(f"Паук {v} должен иметь степень 2")
    legs: list[tuple[int, EdgeKind]] = []
    for neighbour in sorted(d.neighbours(v)):
        simple, hadamard = d.edge_counts(v, neighbour)
        legs.extend([(neighbour, EdgeKind.SIMPLE)] * simple)
        legs.extend([(neighbour, EdgeKind.HADAMARD)] * hadamard)
    (a, kind_a), (b, kind_b) = legs
    d.remove_vertex(v)
    d.add_edge(a, b, kind_a.compose(kind_b))
    return d


def _normalize_pass(d: ZxDiagram) -> bool:
    changed = False
    for v in d.spiders():
        simple, hadamard = d.self_loops(v)
        if simple or hadamard:
            d.remove_edges(v, v)
            if hadamard % 2:
                d.add_to_phase(v, PI)
            changed = True

    multi = [
        (u, v)
        for u in d.spiders()
        for v in sorted(d.spider_neighbours(u))
        if u < v and sum(d.edge_counts(u, v)) > 1
    ]
    for u, v in multi:
        if u not in d or v not in d:
            continue
        simple, hadamard = d.edge_counts(u, v)
        if simple + hadamard <= 1:
            continue
        changed = True
        if d.kind(u) == d.kind(v):
            if simple:
                fuse(d, u, v)
            else:
                d.set_edge_counts(u, v, 0, hadamard % 2)
        elif hadamard == 0:
            d.set_edge_counts(u, v, simple % 2, 0)
        else:
            color_change(d, u if d.kind(u) == VertexKind.X else v)
    return changed


def _normalize(d: ZxDiagram) -> bool:
    changed = False
    while _normalize_pass(d):
        changed = True
    return changed


def normalize_multiedges(d: ZxDiagram) -> ZxDiagram:
    _normalize(d)
    return d


# ─── Производные правила ───


def apply_antipode(d: ZxDiagram, u: int, v: int) -> ZxDiagram:
    _require_spider(d, u)
    _require_spider(d, v)
    if d.kind(u) != VertexKind.Z or d.kind(v) != VertexKind.X:
        raise RewriteError("Правило антипода требует Z-паука и X-паука")
    if d.edge_counts(u, v) != (2, 0):
        raise RewriteError(f"Пауки {u} и {v} должны быть соединены ровно двумя простыми рёбрами")
    d.remove_edges(u, v)
    return d


def apply_pi_copy(d: ZxDiagram, x_vertex: int, z_vertex: int) -> ZxDiagram:
    _require_spider(d, x_vertex)
    _require_spider(d, z_vertex)
    if d.kind(x_vertex) != VertexKind.X or d.phase(x_vertex) != PI:
        raise RewriteError(f"Вершина {x_vertex} не является X(π)")
    if d.kind(z_vertex) != VertexKind.Z:
        raise RewriteError(f"Вершина {z_vertex} не является Z-пауком")
    if d.edge_counts(x_vertex, z_vertex) != (1, 0) or d.self_loops(z_vertex) != (0, 0):
        raise RewriteError("X(π) должен быть присоединён к Z-пауку одним простым ребром")

    degree = d.degree(x_vertex)
    outer: tuple[int, EdgeKind] | None = None
    if degree == 2:
        (other,) = d.neighbours(x_vertex) - {z_vertex}
        outer = (other, d.edge_kind(x_vertex, other))
    elif degree != 1:
        raise RewriteError(f"X(π) {x_vertex} должен иметь степень 1 или 2")

    legs: list[tuple[int, EdgeKind]] = []
    for neighbour in sorted(d.neighbours(z_vertex) - {x_vertex}):
        simple, hadamard = d.edge_counts(z_vertex, neighbour)
        legs.extend([(neighbour, EdgeKind.SIMPLE)] * simple)
        legs.extend([(neighbour, EdgeKind.HADAMARD)] * hadamard)
    qubit, row = d.qubit(z_vertex), d.row(z_vertex)
    d.remove_vertex(x_vertex)

    if outer is None:
        # состояние |1⟩ копируется на каждую ногу, паук исчезает
        d.remove_vertex(z_vertex)
        for neighbour, kind in legs:
            copy = d.add_vertex(VertexKind.X, PI, qubit=qubit, row=row)
            d.add_edge(copy, neighbour, kind)
        return d

    for neighbour, kind in legs:
        d.remove_edge(z_vertex, neighbour, kind)
        copy = d.add_vertex(VertexKind.X, PI, qubit=qubit, row=row)
        d.add_edge(z_vertex, copy, EdgeKind.SIMPLE)
        d.add_edge(copy, neighbour, kind)
    d.add_edge(outer[0], z_vertex, outer[1])
    d.set_phase(z_vertex, -d.phase(z_vertex))
    return d


# ─── Графовый вид ───


def is_graph_like(d: ZxDiagram) -> GraphLikeReport:
    violations: list[str] = []
    for v in d.spiders():
        if d.kind(v) != VertexKind.Z:
            violations.append(f"condition 1: X-паук {v}")
    for u in d.vertices():
        simple, hadamard = d.self_loops(u)
        if simple or hadamard:
            violations.append(f"condition 3: петля у вершины {u}")
        for v in sorted(d.neighbours(u)):
            if v < u:
                continue
            simple, hadamard = d.edge_counts(u, v)
            if simple + hadamard > 1:
                violations.append(f"condition 3: кратное ребро {u}-{v}")
            if simple and d.is_spider(u) and d.is_spider(v):
                violations.append(f"condition 2: простое ребро {u}-{v}")
    for b in d.inputs + d.outputs:
        (neighbour,) = d.neighbours(b)
        if d.is_boundary(neighbour):
            violations.append(f"condition 4: граница {b} не присоединена к пауку")
    for v in d.spiders():
        if len(d.boundary_neighbours(v)) > 1:
            violations.append(f"condition 4: паук {v} связан с несколькими границами")
    return GraphLikeReport(ok=not violations, violations=violations)


def _fuse_simple_edges(d: ZxDiagram) -> bool:
    changed = False
    for u in d.spiders():
        current = u
        while current in d:
            partner = next(
                (
                    v
                    for v in sorted(d.spider_neighbours(current))
                    if d.kind(v) == d.kind(current) and d.edge_counts(current, v)[0]
                ),
                None,
            )
            if partner is None:
                break
            fuse(d, current, partner)
            current = min(current, partner)
            changed = True
    return changed


def _is_hadamard_identity(d: ZxDiagram, v: int) -> bool:
    if not d.phase(v).is_zero() or d.degree(v) != 2 or d.self_loops(v) != (0, 0):
        return False
    neighbours = d.neighbours(v)
    if len(neighbours) != 2 or any(d.is_boundary(n) for n in neighbours):
        return False
    return all(d.edge_counts(v, n) == (0, 1) for n in neighbours)


def _remove_hadamard_identities(d: ZxDiagram, steps: list[SimpStep] | None) -> bool:
    changed = False
    for v in d.spiders():
        if v in d and _is_hadamard_identity(d, v):
            remove_identity(d, v)
            changed = True
            if steps is not None:
                steps.append(SimpStep(kind=StepKind.ID_REMOVAL, vertices=[v]))
    return changed


def _dummy_row(d: ZxDiagram, boundary: int, offset: int) -> int | None:
    row = d.row(boundary)
    if row is None:
        return None
    return row + offset if boundary in d.inputs else row - offset


def insert_boundary_dummy(d: ZxDiagram, boundary: int, offset: int = 1) -> int:
    """Вставляет фазовый ноль между границей и её соседом, сохраняя вид провода."""
    (neighbour,) = d.neighbours(boundary)
    kind = d.edge_kind(boundary, neighbour)
    dummy = d.add_vertex(VertexKind.Z, qubit=d.qubit(boundary), row=_dummy_row(d, boundary, offset))
    d.remove_edges(boundary, neighbour)
    d.add_edge(boundary, dummy, kind.toggled())
    d.add_edge(dummy, neighbour, EdgeKind.HADAMARD)
    return dummy


def _fix_boundaries(d: ZxDiagram) -> None:
    claimed: set[int] = set()
    for boundary in d.inputs + d.outputs:
        (neighbour,) = d.neighbours(boundary)
        if d.is_boundary(neighbour):
            # голый провод: два фиктивных паука
            kind = d.edge_kind(boundary, neighbour)
            near = d.add_vertex(VertexKind.Z, qubit=d.qubit(boundary), row=_dummy_row(d, boundary, 1))
            far = d.add_vertex(VertexKind.Z, qubit=d.qubit(neighbour), row=_dummy_row(d, neighbour, 1))
            d.remove_edges(boundary, neighbour)
            d.add_edge(boundary, near, EdgeKind.SIMPLE)
            d.add_edge(near, far, EdgeKind.HADAMARD)
            d.add_edge(far, neighbour, kind.toggled())
            claimed.add(near)
        elif neighbour in claimed:
            claimed.add(insert_boundary_dummy(d, boundary))
        else:
            claimed.add(neighbour)


def to_graph_like(d: ZxDiagram, steps: list[SimpStep] | None = None) -> ZxDiagram:
    d = d.copy()
    for v in d.spiders():
        if d.kind(v) == VertexKind.X:
            color_change(d, v)
    while True:
        changed = _fuse_simple_edges(d)
        if _normalize(d):
            changed = True
            if steps is not None:
                steps.append(SimpStep(kind=StepKind.MULTIEDGE_FIX))
        if _remove_hadamard_identities(d, steps):
            changed = True
        if not changed:
            break
    _fix_boundaries(d)
    logger.debug("Графовый вид: %s пауков, %s рёбер", len(d.spiders()), d.num_edges())
    return d
