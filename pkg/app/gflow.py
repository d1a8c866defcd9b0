"""Причинный поток и сфокусированный gFlow на открытых графах.

Частичный порядок задаётся целыми уровнями: v ≺ w тогда и только тогда, когда level(v) < level(w).
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from app.diagram import ZxDiagram
from app.errors import FlowError
from app.graph import OpenGraph, odd_neighbourhood, underlying_open_graph
from app.schemas import FlowCheck

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CausalFlow:
    f: Mapping[int, int]
    order: Mapping[int, int]


@dataclass(frozen=True, slots=True)
class FocusedGFlow:
    g: Mapping[int, frozenset[int]]
    order: Mapping[int, int]


def _check_domain(graph: OpenGraph, flow: FocusedGFlow) -> None:
    if set(flow.g) != set(graph.non_outputs):
        raise FlowError("Область определения потока не совпадает с множеством невыходов")
    allowed = graph.non_inputs
    for u, targets in flow.g.items():
        if not targets <= allowed:
            raise FlowError(f"Корректирующее множество вершины {u} выходит за пределы невходов")
    missing = graph.vertices - set(flow.order)
    if missing:
        raise FlowError(f"Нет уровня для вершин {sorted(missing)}")


# ─── Проверки ───


def verify_causal_flow(graph: OpenGraph, flow: CausalFlow) -> FlowCheck:
    if set(flow.f) != set(graph.non_outputs):
        raise FlowError("Область определения причинного потока не совпадает с множеством невыходов")
    for v in sorted(flow.f):
        successor = flow.f[v]
        if successor in graph.inputs or not graph.has_edge(v, successor):
            return FlowCheck(ok=False, violation=f"condition 1 at {v}")
        if flow.order[v] >= flow.order[successor]:
            return FlowCheck(ok=False, violation=f"condition 2 at {v}")
        for u in graph.neighbours(successor):
            if u != v and flow.order[v] >= flow.order[u]:
                return FlowCheck(ok=False, violation=f"condition 3 at {v}")
    return FlowCheck(ok=True)


def verify_gflow(graph: OpenGraph, flow: FocusedGFlow) -> FlowCheck:
    """Проверка обычного (не обязательно сфокусированного) gFlow."""
    _check_domain(graph, flow)
    for u in sorted(flow.g):
        level = flow.order[u]
        if any(level >= flow.order[v] for v in flow.g[u]):
            return FlowCheck(ok=False, violation=f"condition 1 at {u}")
        odd = odd_neighbourhood(graph, flow.g[u])
        if any(w != u and level >= flow.order[w] for w in odd):
            return FlowCheck(ok=False, violation=f"condition 2 at {u}")
        if u not in odd:
            return FlowCheck(ok=False, violation=f"condition 3 at {u}")
    return FlowCheck(ok=True)


def verify_focused_gflow(graph: OpenGraph, flow: FocusedGFlow) -> FlowCheck:
    _check_domain(graph, flow)
    for u in sorted(flow.g):
        if odd_neighbourhood(graph, flow.g[u]) - graph.outputs != {u}:
            return FlowCheck(ok=False, violation=f"condition 1 at {u}")
        if any(flow.order[u] >= flow.order[v] for v in flow.g[u]):
            return FlowCheck(ok=False, violation=f"condition 2 at {u}")
    return FlowCheck(ok=True)


# ─── Построение ───


def construct_causal_flow(d: ZxDiagram) -> CausalFlow:
    graph = underlying_open_graph(d)
    for v in graph.vertices:
        if d.qubit(v) is None or d.row(v) is None:
            raise FlowError(f"У паука {v} нет подсказки кубита или строки")
    f: dict[int, int] = {}
    for v in sorted(graph.non_outputs):
        qubit, row = d.qubit(v), d.row(v)
        successors = [w for w in graph.neighbours(v) if d.qubit(w) == qubit and d.row(w) > row]
        if len(successors) != 1:
            raise FlowError(f"У паука {v} нет единственного соседа справа на кубите {qubit}")
        f[v] = successors[0]
    flow = CausalFlow(f=f, order={v: d.row(v) for v in graph.vertices})
    check = verify_causal_flow(graph, flow)
    if not check.ok:
        raise FlowError(f"Построенный причинный поток некорректен: {check.violation}")
    return flow


def lift_causal_flow(flow: CausalFlow) -> FocusedGFlow:
    return FocusedGFlow(g={u: frozenset({v}) for u, v in flow.f.items()}, order=dict(flow.order))


def focus(graph: OpenGraph, flow: FocusedGFlow) -> FocusedGFlow:
    order = dict(flow.order)
    g = {u: set(targets) for u, targets in flow.g.items()}
    budget = len(graph.vertices) ** 2
    steps = 0
    for u in sorted(g, key=lambda x: (-order[x], x)):
        while True:
            offenders = odd_neighbourhood(graph, g[u]) - graph.outputs - {u}
            if not offenders:
                break
            worst = max(offenders, key=lambda x: (order[x], x))
            if worst not in g:
                raise FlowError(f"Вершина {worst} вне области определения потока")
            g[u] ^= g[worst]
            steps += 1
            if steps > budget:
                raise FlowError("Фокусировка не сошлась: входной поток некорректен")
        if u not in odd_neighbourhood(graph, g[u]):
            raise FlowError(f"Вершина {u} не входит в нечётную окрестность своего множества")
    return FocusedGFlow(g={u: frozenset(targets) for u, targets in g.items()}, order=order)


def circuit_gflow(d: ZxDiagram) -> FocusedGFlow:
    graph = underlying_open_graph(d)
    return focus(graph, lift_causal_flow(construct_causal_flow(d)))


# ─── Обновления при переписывании ───


def update_gflow_lcomp(graph: OpenGraph, flow: FocusedGFlow, u: int, check: bool = True) -> FocusedGFlow:
    if u in graph.inputs or u in graph.outputs:
        raise FlowError(f"Вершина {u} является входом или выходом")
    if u not in graph.vertices:
        raise FlowError(f"Вершина {u} отсутствует в графе")
    if check:
        result = verify_focused_gflow(graph, flow)
        if not result.ok:
            raise FlowError(f"Входной поток некорректен: {result.violation}")

    around = graph.neighbours(u)
    outputs = graph.outputs
    reach = {w: (around & flow.g[w]) - outputs for w in flow.g}
    updated: dict[int, frozenset[int]] = {}
    for w in sorted(flow.g, key=lambda x: (-flow.order[x], x)):
        if w == u:
            continue
        if u not in flow.g[w]:
            acc = set(flow.g[w])
            for t in reach[w]:
                acc ^= updated[t]
        else:
            acc = set(flow.g[w]) ^ {u} ^ flow.g[u]
            for t in reach[u] ^ reach[w]:
                acc ^= updated[t]
        updated[w] = frozenset(acc)
    order = {v: level for v, level in flow.order.items() if v != u}
    return FocusedGFlow(g=updated, order=order)


def update_gflow_pivot(
    graph: OpenGraph,
    flow: FocusedGFlow,
    u: int,
    v: int,
    check: bool = True,
) -> FocusedGFlow:
    if not graph.has_edge(u, v):
        raise FlowError(f"Вершины {u} и {v} не смежны")
    boundary = graph.inputs | graph.outputs
    if u in boundary or v in boundary:
        raise FlowError("Пивот допустим только для внутренних вершин")
    if check:
        result = verify_focused_gflow(graph, flow)
        if not result.ok:
            raise FlowError(f"Входной поток некорректен: {result.violation}")
    pair = {u, v}
    return FocusedGFlow(
        g={w: targets - pair for w, targets in flow.g.items() if w not in pair},
        order={w: level for w, level in flow.order.items() if w not in pair},
    )


def extend_output_flow(graph: OpenGraph, flow: FocusedGFlow, chain: Sequence[int]) -> FocusedGFlow:
    """Выход переезжает по цепочке chain[0] -> ... -> chain[-1]; graph уже после вставки."""
    g = dict(flow.g)
    order = dict(flow.order)
    top = max(order.values(), default=0)
    for index in range(1, len(chain)):
        order[chain[index]] = top + index
        g[chain[index - 1]] = frozenset({chain[index]})
    return focus(graph, FocusedGFlow(g=g, order=order))


def extend_input_flow(graph: OpenGraph, flow: FocusedGFlow, chain: Sequence[int]) -> FocusedGFlow:
    """Вход переезжает по цепочке chain[-1] -> ... -> chain[0]; новые вершины получают младшие уровни."""
    g = dict(flow.g)
    order = dict(flow.order)
    bottom = min(order.values(), default=0)
    last = len(chain) - 1
    for index in range(last):
        order[chain[index]] = bottom - (last - index)
        g[chain[index]] = frozenset({chain[index + 1]})
    return focus(graph, FocusedGFlow(g=g, order=order))
