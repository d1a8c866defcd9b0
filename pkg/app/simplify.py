"""Упрощение графовых диаграмм локальным дополнением и пивотированием.

Внутренний паук не связан с границей. Подготовка к пивоту выносит неклиффордову фазу
граничного паука наружу, в цепочку пауков степени 2 («щиты»); паук за щитом дальше
считается граничным. Щиты создаёт только драйвер, их множество хранится в
`SimpResult.shields` и передаётся в проверки явно.
"""

import logging
from collections.abc import Callable, Collection
from dataclasses import dataclass, field
from itertools import combinations

from app.diagram import ZxDiagram
from app.enums import STEP_LABELS, EdgeKind, StepKind, VertexKind
from app.errors import RewriteError
from app.gflow import (
    FocusedGFlow,
    extend_input_flow,
    extend_output_flow,
    update_gflow_lcomp,
    update_gflow_pivot,
)
from app.graph import underlying_open_graph
from app.phase import PI, ZERO
from app.rules import insert_boundary_dummy, is_graph_like
from app.schemas import SimpStep

logger = logging.getLogger(__name__)

StepObserver = Callable[[ZxDiagram, SimpStep, FocusedGFlow | None], None]

NO_SHIELDS: frozenset[int] = frozenset()


@dataclass(slots=True)
class SimpResult:
    diagram: ZxDiagram
    steps: list[SimpStep] = field(default_factory=list)
    flow: FocusedGFlow | None = None
    edge_toggles: int = 0
    initial_spiders: int = 0
    shields: frozenset[int] = NO_SHIELDS


# ─── Классификация пауков ───


def is_boundary_spider(d: ZxDiagram, v: int) -> bool:
    return d.is_spider(v) and bool(d.boundary_neighbours(v))


def is_shielded(d: ZxDiagram, v: int, shields: Collection[int] = NO_SHIELDS) -> bool:
    """Паук, чей провод к границе уходит через щит."""
    if not d.is_spider(v) or v in shields or is_boundary_spider(d, v):
        return False
    return any(x in shields for x in d.spider_neighbours(v))


def is_interior(d: ZxDiagram, v: int, shields: Collection[int] = NO_SHIELDS) -> bool:
    if not d.is_spider(v) or v in shields or is_boundary_spider(d, v):
        return False
    return not is_shielded(d, v, shields)


def interior_spiders(d: ZxDiagram, shields: Collection[int] = NO_SHIELDS) -> list[int]:
    return [v for v in d.spiders() if is_interior(d, v, shields)]


def _boundary_side(d: ZxDiagram, v: int, shields: Collection[int]) -> bool:
    return is_boundary_spider(d, v) or is_shielded(d, v, shields)


def simplification_violations(d: ZxDiagram, shields: Collection[int] = NO_SHIELDS) -> list[str]:
    violations = []
    interior = set(interior_spiders(d, shields))
    for v in sorted(interior):
        phase = d.phase(v)
        if phase.is_proper_clifford():
            violations.append(f"внутренний собственно клиффордов паук {v}")
        if not phase.is_pauli():
            continue
        for w in sorted(d.spider_neighbours(v)):
            if w in interior and w > v and d.phase(w).is_pauli():
                violations.append(f"смежные внутренние паули-пауки {v}-{w}")
            if _boundary_side(d, w, shields):
                violations.append(f"внутренний паули-паук {v} рядом с граничным {w}")
    return violations


# ─── Правила упрощения ───


def _check_graph_like_spider(d: ZxDiagram, u: int) -> None:
    if u not in d or d.kind(u) != VertexKind.Z:
        raise RewriteError(f"Вершина {u} не является Z-пауком")
    if is_boundary_spider(d, u):
        raise RewriteError(f"Паук {u} связан с границей")
    for n in d.neighbours(u):
        if d.edge_counts(u, n) != (0, 1):
            raise RewriteError(f"Ребро {u}-{n} не является одиночным адамаровым")


def _lcomp(d: ZxDiagram, u: int) -> int:
    alpha = d.phase(u)
    around = sorted(d.spider_neighbours(u))
    toggles = 0
    for a, b in combinations(around, 2):
        d.toggle_hadamard(a, b)
        toggles += 1
    for n in around:
        d.add_to_phase(n, -alpha)
    d.remove_vertex(u)
    return toggles


def _pivot(d: ZxDiagram, u: int, v: int) -> int:
    phase_u, phase_v = d.phase(u), d.phase(v)
    around_u = d.spider_neighbours(u) - {v}
    around_v = d.spider_neighbours(v) - {u}
    common = around_u & around_v
    only_u = sorted(around_u - common)
    only_v = sorted(around_v - common)
    shared = sorted(common)
    toggles = 0
    for first, second in ((only_u, only_v), (only_u, shared), (only_v, shared)):
        for a in first:
            for b in second:
                d.toggle_hadamard(a, b)
                toggles += 1
    for a in only_u:
        d.add_to_phase(a, phase_v)
    for b in only_v:
        d.add_to_phase(b, phase_u)
    for c in shared:
        d.add_to_phase(c, phase_u + phase_v + PI)
    d.remove_vertex(u)
    d.remove_vertex(v)
    return toggles


def lc_simp(d: ZxDiagram, u: int) -> ZxDiagram:
    _check_graph_like_spider(d, u)
    if not d.phase(u).is_proper_clifford():
        raise RewriteError(f"Фаза паука {u} не равна ±π/2")
    _lcomp(d, u)
    return d


def pivot_simp(d: ZxDiagram, u: int, v: int) -> ZxDiagram:
    _check_graph_like_spider(d, u)
    _check_graph_like_spider(d, v)
    if u == v or not d.has_edge(u, v):
        raise RewriteError(f"Пауки {u} и {v} не смежны")
    if not (d.phase(u).is_pauli() and d.phase(v).is_pauli()):
        raise RewriteError(f"Пауки {u} и {v} должны иметь фазы, кратные π")
    _pivot(d, u, v)
    return d


def _single_boundary(d: ZxDiagram, v: int) -> int:
    if v not in d or not d.is_spider(v):
        raise RewriteError(f"Вершина {v} не является пауком")
    boundaries = d.boundary_neighbours(v)
    if len(boundaries) != 1:
        raise RewriteError(f"Паук {v} не связан ровно с одной границей")
    return boundaries[0]


def unfuse_boundary(d: ZxDiagram, v: int) -> int:
    """Отделяет провод границы от v новым пауком с нулевой фазой; фаза остаётся на v."""
    return insert_boundary_dummy(d, _single_boundary(d, v))


def _peel(d: ZxDiagram, v: int, anchor: int, kind: EdgeKind) -> tuple[int, int]:
    """v(α) ─ anchor превращается в v(0) ─H─ middle(0) ─H─ outer(α) ─ anchor."""
    alpha = d.phase(v)
    qubit = d.qubit(anchor)
    middle = d.add_vertex(VertexKind.Z, ZERO, qubit=qubit)
    outer = d.add_vertex(VertexKind.Z, alpha, qubit=qubit)
    d.remove_edges(v, anchor)
    d.add_edge(v, middle, EdgeKind.HADAMARD)
    d.add_edge(middle, outer, EdgeKind.HADAMARD)
    d.add_edge(outer, anchor, kind)
    d.set_phase(v, ZERO)
    return middle, outer


def _prepare_boundary(d: ZxDiagram, v: int) -> tuple[int, int]:
    boundary = _single_boundary(d, v)
    return _peel(d, v, boundary, d.edge_kind(v, boundary))


def boundary_pivot_prep(d: ZxDiagram, v: int) -> ZxDiagram:
    _prepare_boundary(d, v)
    return d


# ─── Драйвер ───


class _Simplifier:
    def __init__(
        self,
        d: ZxDiagram,
        flow: FocusedGFlow | None,
        observer: StepObserver | None,
        shields: Collection[int],
    ) -> None:
        self.d = d
        self.flow = flow
        self.observer = observer
        self.shields = set(shields)
        self.steps: list[SimpStep] = []
        self.toggles = 0

    def _record(self, kind: StepKind, vertices: list[int], note: str | None = None) -> None:
        step = SimpStep(kind=kind, vertices=vertices, note=note)
        self.steps.append(step)
        logger.debug("Шаг упрощения «%s»: %s", STEP_LABELS[kind], vertices)
        if self.observer is not None:
            self.observer(self.d, step, self.flow)

    def _graph(self):
        return underlying_open_graph(self.d)

    def _apply_lcomp(self, u: int) -> None:
        if self.flow is not None:
            self.flow = update_gflow_lcomp(self._graph(), self.flow, u, check=False)
        self.toggles += _lcomp(self.d, u)

    def _apply_pivot(self, u: int, v: int) -> None:
        if self.flow is not None:
            self.flow = update_gflow_pivot(self._graph(), self.flow, u, v, check=False)
        self.toggles += _pivot(self.d, u, v)

    def _extend(self, chain_outward: list[int], boundary_is_input: bool) -> None:
        if self.flow is None:
            return
        graph = self._graph()
        if boundary_is_input:
            self.flow = extend_input_flow(graph, self.flow, list(reversed(chain_outward)))
        else:
            self.flow = extend_output_flow(graph, self.flow, chain_outward)

    def _walk_out(self, previous: int, current: int) -> list[int]:
        """Цепочка щитов от current до граничного паука включительно."""
        path = [current]
        while not is_boundary_spider(self.d, current):
            previous, current = current, next(x for x in self.d.spider_neighbours(current) if x != previous)
            path.append(current)
        return path

    def _interior(self, v: int) -> bool:
        return v in self.d and is_interior(self.d, v, self.shields)

    def lcomp_sweep(self, marked: set[int]) -> bool:
        changed = False
        for u in sorted(marked):
            if self._interior(u) and self.d.phase(u).is_proper_clifford():
                self._apply_lcomp(u)
                self._record(StepKind.LCOMP, [u])
                changed = True
        return changed

    def pivot_sweep(self, marked: set[int]) -> bool:
        changed = False
        for u in sorted(marked):
            if not (self._interior(u) and self.d.phase(u).is_pauli()):
                continue
            for v in sorted(self.d.spider_neighbours(u)):
                if v in marked and self._interior(v) and self.d.phase(v).is_pauli():
                    self._apply_pivot(u, v)
                    self._record(StepKind.PIVOT, [u, v])
                    changed = True
                    break
        return changed

    def boundary_step(self, marked: set[int]) -> bool:
        for u in sorted(marked):
            if not (self._interior(u) and self.d.phase(u).is_pauli()):
                continue
            for v in sorted(self.d.spider_neighbours(u)):
                if is_boundary_spider(self.d, v):
                    self._boundary_rewrite(u, v)
                    return True
                if is_shielded(self.d, v, self.shields):
                    self._shielded_rewrite(u, v)
                    return True
        return False

    def _boundary_rewrite(self, u: int, v: int) -> None:
        d = self.d
        boundary = _single_boundary(d, v)
        is_input = boundary in d.inputs
        phase = d.phase(v)
        if phase.is_clifford():
            fresh = unfuse_boundary(d, v)
            self._extend([v, fresh], is_input)
            if phase.is_pauli():
                self._apply_pivot(u, v)
                self._record(StepKind.BOUNDARY_PIVOT, [u, v, fresh])
            else:
                self._apply_lcomp(v)
                self._apply_lcomp(u)
                self._record(StepKind.BOUNDARY_LCOMP, [u, v, fresh])
            return
        middle, outer = _prepare_boundary(d, v)
        self.shields.add(outer)
        self._extend([v, middle, outer], is_input)
        self._apply_pivot(u, v)
        self._record(StepKind.BOUNDARY_PIVOT, [u, v, middle, outer], note="prep")

    def _shielded_rewrite(self, u: int, v: int) -> None:
        d = self.d
        shield = min(x for x in d.spider_neighbours(v) if x in self.shields)
        middle, outer = _peel(d, v, shield, EdgeKind.HADAMARD)
        self.shields.add(outer)
        chain = [v, middle, outer] + self._walk_out(outer, shield)
        (boundary,) = d.boundary_neighbours(chain[-1])
        self._extend(chain, boundary in d.inputs)
        self._apply_pivot(u, v)
        self._record(StepKind.BOUNDARY_PIVOT, [u, v, middle, outer], note="shield")

    def run(self) -> None:
        while True:
            marked = {v for v in interior_spiders(self.d, self.shields) if self.d.phase(v).is_clifford()}
            progressed = False
            while True:
                if self.lcomp_sweep(marked) or self.pivot_sweep(marked) or self.boundary_step(marked):
                    progressed = True
                    continue
                break
            if not progressed:
                break


def clifford_simp(
    d: ZxDiagram,
    track_flow: FocusedGFlow | None = None,
    observer: StepObserver | None = None,
    shields: Collection[int] = NO_SHIELDS,
) -> SimpResult:
    """Щиты прошлого прогона передаются через `shields`, иначе их пауки снова выносятся наружу."""
    report = is_graph_like(d)
    if not report.ok:
        raise RewriteError("Упрощение требует графового вида: " + "; ".join(report.violations))
    missing = sorted(set(shields) - set(d.spiders()))
    if missing:
        raise RewriteError(f"Щиты {missing} не являются пауками диаграммы")
    work = d.copy()
    initial = len(work.spiders())
    state = _Simplifier(work, track_flow, observer, shields)
    state.run()
    logger.info(
        "Упрощение: %s шагов, пауков %s -> %s, щитов %s, переключений рёбер %s",
        len(state.steps),
        initial,
        len(work.spiders()),
        len(state.shields),
        state.toggles,
    )
    return SimpResult(
        diagram=work,
        steps=state.steps,
        flow=state.flow,
        edge_toggles=state.toggles,
        initial_spiders=initial,
        shields=frozenset(state.shields),
    )
