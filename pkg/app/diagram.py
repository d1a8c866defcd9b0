import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, replace

import networkx as nx

from app.enums import EdgeKind, VertexKind
from app.errors import DiagramError
from app.phase import ZERO, Phase
from app.schemas import DiagramDocument, VertexDocument


_KIND_SLOT = {EdgeKind.SIMPLE: 0, EdgeKind.HADAMARD: 1}


@dataclass(slots=True)
class VertexData:
    kind: VertexKind
    phase: Phase = ZERO
    qubit: int | None = None
    row: int | None = None


class ZxDiagram:
    """ZX-диаграмма с устойчивыми номерами вершин.

    Рёбра хранятся как счётчики (простые, адамаровы) на пару вершин: кратные рёбра и петли
    допустимы в промежуточных состояниях и убираются правилами переписывания.
    """

    def __init__(self) -> None:
        self._vertices: dict[int, VertexData] = {}
        self._adjacency: dict[int, dict[int, list[int]]] = {}
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self._next_id = 0

    # ─── Построение ───

    @classmethod
    def build(
        cls,
        vertices: Mapping[int, VertexData],
        edges: Iterable[tuple[int, int, EdgeKind]],
        inputs: Iterable[int],
        outputs: Iterable[int],
    ) -> "ZxDiagram":
        diagram = cls()
        for vertex_id in sorted(vertices):
            if vertex_id < 0:
                raise DiagramError(f"Отрицательный номер вершины: {vertex_id}")
            diagram._vertices[vertex_id] = replace(vertices[vertex_id])
            diagram._adjacency[vertex_id] = {}
        diagram._next_id = max(vertices, default=-1) + 1
        for u, v, kind in edges:
            if u not in diagram._vertices or v not in diagram._vertices:
                raise DiagramError(f"Ребро {u}-{v} ссылается на несуществующую вершину")
            diagram.add_edge(u, v, EdgeKind(kind))
        diagram.inputs = list(inputs)
        diagram.outputs = list(outputs)
        diagram.validate()
        return diagram

    def validate(self) -> None:
        listed = self.inputs + self.outputs
        if len(set(listed)) != len(listed):
            raise DiagramError("Граничная вершина назначена более одного раза")
        for vertex_id in listed:
            if vertex_id not in self._vertices:
                raise DiagramError(f"Граница {vertex_id} не существует")
            if self._vertices[vertex_id].kind != VertexKind.BOUNDARY:
                raise DiagramError(f"Вершина {vertex_id} в списке границ не является границей")
        listed_set = set(listed)
        for vertex_id, data in self._vertices.items():
            if data.kind != VertexKind.BOUNDARY:
                continue
            if vertex_id not in listed_set:
                raise DiagramError(f"Граница {vertex_id} не входит ни во входы, ни в выходы")
            if not data.phase.is_zero():
                raise DiagramError(f"Граница {vertex_id} не может иметь фазу")
            if self.degree(vertex_id) != 1:
                raise DiagramError(f"Граница {vertex_id} должна иметь степень 1")

    def add_vertex(
        self,
        kind: VertexKind,
        phase: Phase = ZERO,
        qubit: int | None = None,
        row: int | None = None,
    ) -> int:
        vertex_id = self._next_id
        self._next_id += 1
        self._vertices[vertex_id] = VertexData(kind=kind, phase=phase, qubit=qubit, row=row)
        self._adjacency[vertex_id] = {}
        return vertex_id

    def add_input(self, qubit: int | None = None, row: int | None = None) -> int:
        vertex_id = self.add_vertex(VertexKind.BOUNDARY, qubit=qubit, row=row)
        self.inputs.append(vertex_id)
        return vertex_id

    def add_output(self, qubit: int | None = None, row: int | None = None) -> int:
        vertex_id = self.add_vertex(VertexKind.BOUNDARY, qubit=qubit, row=row)
        self.outputs.append(vertex_id)
        return vertex_id

    def remove_vertex(self, vertex_id: int) -> None:
        self._require(vertex_id)
        for neighbour in list(self._adjacency[vertex_id]):
            if neighbour != vertex_id:
                del self._adjacency[neighbour][vertex_id]
        del self._adjacency[vertex_id]
        del self._vertices[vertex_id]
        if vertex_id in self.inputs:
            self.inputs.remove(vertex_id)
        if vertex_id in self.outputs:
            self.outputs.remove(vertex_id)

    def copy(self) -> "ZxDiagram":
        other = ZxDiagram()
        other._vertices = {key: replace(data) for key, data in self._vertices.items()}
        other._adjacency = {key: {} for key in self._adjacency}
        for u, row in self._adjacency.items():
            for v, counts in row.items():
                if u <= v:
                    shared = list(counts)
                    other._adjacency[u][v] = shared
                    other._adjacency[v][u] = shared
        other.inputs = list(self.inputs)
        other.outputs = list(self.outputs)
        other._next_id = self._next_id
        return other

    # ─── Рёбра ───

    def add_edge(self, u: int, v: int, kind: EdgeKind = EdgeKind.SIMPLE, count: int = 1) -> None:
        self._require(u)
        self._require(v)
        counts = self._adjacency[u].get(v)
        if counts is None:
            counts = [0, 0]
            self._adjacency[u][v] = counts
            self._adjacency[v][u] = counts
        counts[_KIND_SLOT[kind]] += count

    def remove_edge(self, u: int, v: int, kind: EdgeKind) -> None:
        counts = self._adjacency.get(u, {}).get(v)
        slot = _KIND_SLOT[kind]
        if counts is None or counts[slot] == 0:
            raise DiagramError(f"Нет ребра {u}-{v} вида {kind.value}")
        counts[slot] -= 1
        if counts == [0, 0]:
            self._drop_pair(u, v)

    def remove_edges(self, u: int, v: int) -> None:
        if v in self._adjacency.get(u, {}):
            self._drop_pair(u, v)

    def set_edge_counts(self, u: int, v: int, simple: int, hadamard: int) -> None:
        self.remove_edges(u, v)
        if simple:
            self.add_edge(u, v, EdgeKind.SIMPLE, simple)
        if hadamard:
            self.add_edge(u, v, EdgeKind.HADAMARD, hadamard)

    def edge_counts(self, u: int, v: int) -> tuple[int, int]:
        counts = self._adjacency.get(u, {}).get(v)
        if counts is None:
            return 0, 0
        return counts[0], counts[1]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency.get(u, {})

    def edge_kind(self, u: int, v: int) -> EdgeKind:
        simple, hadamard = self.edge_counts(u, v)
        if simple + hadamard != 1:
            raise DiagramError(f"Между {u} и {v} не ровно одно ребро")
        return EdgeKind.SIMPLE if simple else EdgeKind.HADAMARD

    def toggle_hadamard(self, u: int, v: int) -> None:
        simple, hadamard = self.edge_counts(u, v)
        if simple or hadamard > 1:
            raise DiagramError(f"Ребро {u}-{v} не является одиночным адамаровым")
        if hadamard:
            self._drop_pair(u, v)
        else:
            self.add_edge(u, v, EdgeKind.HADAMARD)

    def edges(self) -> list[tuple[int, int, EdgeKind]]:
        result = []
        for u in sorted(self._adjacency):
            for v in sorted(self._adjacency[u]):
                if u > v:
                    continue
                simple, hadamard = self._adjacency[u][v]
                result.extend([(u, v, EdgeKind.SIMPLE)] * simple)
                result.extend([(u, v, EdgeKind.HADAMARD)] * hadamard)
        return result

    def num_edges(self) -> int:
        return len(self.edges())

    def _drop_pair(self, u: int, v: int) -> None:
        del self._adjacency[u][v]
        if u != v:
            del self._adjacency[v][u]

    # ─── Вершины ───

    def _require(self, vertex_id: int) -> VertexData:
        data = self._vertices.get(vertex_id)
        if data is None:
            raise DiagramError(f"Вершина {vertex_id} отсутствует")
        return data

    def __contains__(self, vertex_id: object) -> bool:
        return vertex_id in self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def vertex(self, vertex_id: int) -> VertexData:
        return self._require(vertex_id)

    def vertices(self) -> list[int]:
        return sorted(self._vertices)

    def spiders(self) -> list[int]:
        return sorted(key for key, data in self._vertices.items() if data.kind != VertexKind.BOUNDARY)

    def kind(self, vertex_id: int) -> VertexKind:
        return self._require(vertex_id).kind

    def set_kind(self, vertex_id: int, kind: VertexKind) -> None:
        self._require(vertex_id).kind = kind

    def phase(self, vertex_id: int) -> Phase:
        return self._require(vertex_id).phase

    def set_phase(self, vertex_id: int, phase: Phase) -> None:
        self._require(vertex_id).phase = phase

    def add_to_phase(self, vertex_id: int, phase: Phase) -> None:
        data = self._require(vertex_id)
        data.phase = data.phase + phase

    def qubit(self, vertex_id: int) -> int | None:
        return self._require(vertex_id).qubit

    def row(self, vertex_id: int) -> int | None:
        return self._require(vertex_id).row

    def is_boundary(self, vertex_id: int) -> bool:
        return self._require(vertex_id).kind == VertexKind.BOUNDARY

    def is_spider(self, vertex_id: int) -> bool:
        return not self.is_boundary(vertex_id)

    def neighbours(self, vertex_id: int) -> set[int]:
        self._require(vertex_id)
        return {key for key in self._adjacency[vertex_id] if key != vertex_id}

    def spider_neighbours(self, vertex_id: int) -> set[int]:
        return {key for key in self.neighbours(vertex_id) if self._vertices[key].kind != VertexKind.BOUNDARY}

    def boundary_neighbours(self, vertex_id: int) -> list[int]:
        return sorted(key for key in self.neighbours(vertex_id) if self._vertices[key].kind == VertexKind.BOUNDARY)

    def degree(self, vertex_id: int) -> int:
        self._require(vertex_id)
        total = 0
        for neighbour, counts in self._adjacency[vertex_id].items():
            legs = counts[0] + counts[1]
            total += 2 * legs if neighbour == vertex_id else legs
        return total

    def self_loops(self, vertex_id: int) -> tuple[int, int]:
        return self.edge_counts(vertex_id, vertex_id)

    # ─── Сериализация ───

    def to_document(self) -> DiagramDocument:
        return DiagramDocument(
            vertices=[
                VertexDocument(
                    id=key,
                    kind=data.kind,
                    phase=str(data.phase),
                    qubit=data.qubit,
                    row=data.row,
                )
                for key, data in sorted(self._vertices.items())
            ],
            edges=[(u, v, kind) for u, v, kind in self.edges()],
            inputs=list(self.inputs),
            outputs=list(self.outputs),
        )

    @classmethod
    def from_document(cls, document: DiagramDocument) -> "ZxDiagram":
        vertices = {}
        for item in document.vertices:
            if item.id in vertices:
                raise DiagramError(f"Повторный номер вершины: {item.id}")
            vertices[item.id] = VertexData(
                kind=item.kind,
                phase=Phase.parse(item.phase),
                qubit=item.qubit,
                row=item.row,
            )
        return cls.build(vertices, document.edges, document.inputs, document.outputs)

    def dumps(self) -> str:
        return self.to_document().model_dump_json(exclude_none=True)

    @classmethod
    def loads(cls, text: str) -> "ZxDiagram":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"Некорректный JSON диаграммы: {exc}") from exc
        return cls.from_document(DiagramDocument.model_validate(payload))

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        roles = {vertex_id: ("in", index) for index, vertex_id in enumerate(self.inputs)}
        roles.update({vertex_id: ("out", index) for index, vertex_id in enumerate(self.outputs)})
        for key, data in self._vertices.items():
            graph.add_node(key, kind=data.kind.value, phase=str(data.phase), role=roles.get(key))
        for u, v, kind in self.edges():
            graph.add_edge(u, v, kind=kind.value)
        return graph

    def is_isomorphic(self, other: "ZxDiagram") -> bool:
        node_match = nx.algorithms.isomorphism.categorical_node_match(["kind", "phase", "role"], [None, None, None])
        edge_match = nx.algorithms.isomorphism.categorical_multiedge_match("kind", None)
        return nx.is_isomorphic(self.to_networkx(), other.to_networkx(), node_match=node_match, edge_match=edge_match)

    def __repr__(self) -> str:
        return (
            f"ZxDiagram(vertices={len(self._vertices)}, edges={self.num_edges()}, "
            f"inputs={len(self.inputs)}, outputs={len(self.outputs)})"
        )
