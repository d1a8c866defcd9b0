from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import networkx as nx

from app.diagram import ZxDiagram
from app.enums import EdgeKind
from app.errors import DiagramError
from app.rules import is_graph_like


@dataclass(frozen=True, slots=True)
class OpenGraph:
    """Неизменяемый простой граф с выделенными входами и выходами."""

    adjacency: Mapping[int, frozenset[int]]
    inputs: frozenset[int] = field(default_factory=frozenset)
    outputs: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
        inputs: Iterable[int] = (),
        outputs: Iterable[int] = (),
    ) -> "OpenGraph":
        adjacency: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise DiagramError(f"Петля у вершины {u} в открытом графе")
            if u not in adjacency or v not in adjacency:
                raise DiagramError(f"Ребро {u}-{v} ссылается на несуществующую вершину")
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(
            {v: frozenset(n) for v, n in adjacency.items()},
            frozenset(inputs),
            frozenset(outputs),
        )

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.adjacency)

    @property
    def non_outputs(self) -> frozenset[int]:
        return self.vertices - self.outputs

    @property
    def non_inputs(self) -> frozenset[int]:
        return self.vertices - self.inputs

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, frozenset())

    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u, nbrs in self.adjacency.items() for v in nbrs if u < v}

    def without(self, removed: Iterable[int]) -> "OpenGraph":
        gone = frozenset(removed)
        return OpenGraph(
            {v: nbrs - gone for v, nbrs in self.adjacency.items() if v not in gone},
            self.inputs - gone,
            self.outputs - gone,
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.adjacency)
        graph.add_edges_from(self.edges())
        return graph


def underlying_open_graph(d: ZxDiagram) -> OpenGraph:
    report = is_graph_like(d)
    if not report.ok:
        raise DiagramError("Диаграмма не в графовом виде: " + "; ".join(report.violations))
    spiders = d.spiders()
    edges = [
        (u, v)
        for u, v, kind in d.edges()
        if kind == EdgeKind.HADAMARD and d.is_spider(u) and d.is_spider(v)
    ]
    inputs = [next(iter(d.neighbours(b))) for b in d.inputs]
    outputs = [next(iter(d.neighbours(b))) for b in d.outputs]
    return OpenGraph.from_edges(spiders, edges, inputs, outputs)


def odd_neighbourhood(g: OpenGraph, subset: Iterable[int]) -> frozenset[int]:
    result: set[int] = set()
    for v in subset:
        result ^= g.neighbours(v)
    return frozenset(result)


def closed_odd_neighbourhood(g: OpenGraph, subset: Iterable[int]) -> frozenset[int]:
    members = frozenset(subset)
    return odd_neighbourhood(g, members) | members


def local_complement(g: OpenGraph, u: int) -> OpenGraph:
    if u not in g.adjacency:
        raise DiagramError(f"Вершина {u} отсутствует в графе")
    around = g.neighbours(u)
    adjacency = {}
    for v, nbrs in g.adjacency.items():
        if v in around:
            nbrs = nbrs ^ (around - {v})
        adjacency[v] = nbrs
    return OpenGraph(adjacency, g.inputs, g.outputs)


def pivot(g: OpenGraph, u: int, v: int) -> OpenGraph:
    if not g.has_edge(u, v):
        raise DiagramError(f"Вершины {u} и {v} не смежны")
    around_u = g.neighbours(u) - {v}
    around_v = g.neighbours(v) - {u}
    common = around_u & around_v
    only_u = around_u - common
    only_v = around_v - common
    toggles: dict[int, set[int]] = {a: set() for a in only_u | only_v | common}
    for first, second in ((only_u, only_v), (only_u, common), (only_v, common)):
        for a in first:
            toggles[a] |= second
            for b in second:
                toggles[b].add(a)
    adjacency = {}
    for w, nbrs in g.adjacency.items():
        if w in (u, v):
            continue
        nbrs = nbrs ^ frozenset(toggles.get(w, ()))
        # u и v меняются местами
        if w in only_u:
            nbrs = nbrs - {u} | {v}
        elif w in only_v:
            nbrs = nbrs - {v} | {u}
        adjacency[w] = frozenset(nbrs)
    adjacency[u] = frozenset(around_v | {v})
    adjacency[v] = frozenset(around_u | {u})
    return OpenGraph(adjacency, g.inputs, g.outputs)
