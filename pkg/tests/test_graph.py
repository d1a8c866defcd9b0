import itertools

import networkx as nx
import pytest

from app.circuit import Circuit, Gate, circuit_to_diagram
from app.errors import DiagramError
from app.graph import (
    OpenGraph,
    closed_odd_neighbourhood,
    local_complement,
    odd_neighbourhood,
    pivot,
    underlying_open_graph,
)


def _random_graph(seed: int, n: int = 9, p: float = 0.4) -> OpenGraph:
    nxg = nx.gnp_random_graph(n, p, seed=seed)
    return OpenGraph.from_edges(nxg.nodes, nxg.edges)


def _brute_local_complement(g: OpenGraph, u: int) -> set[tuple[int, int]]:
    edges = {frozenset(e) for e in g.edges()}
    for a, b in itertools.combinations(sorted(g.neighbours(u)), 2):
        edges ^= {frozenset((a, b))}
    return {tuple(sorted(e)) for e in edges}


def _closed(g: OpenGraph, v: int) -> frozenset[int]:
    return g.neighbours(v) ^ {v}


def test_from_edges_rejects_loops_and_unknown_vertices():
    with pytest.raises(DiagramError):
        OpenGraph.from_edges([0, 1], [(0, 0)])
    with pytest.raises(DiagramError):
        OpenGraph.from_edges([0, 1], [(0, 3)])


def test_odd_neighbourhood_small_example():
    g = OpenGraph.from_edges(range(4), [(0, 1), (1, 2), (2, 3), (0, 2)])
    assert odd_neighbourhood(g, {0}) == {1, 2}
    assert odd_neighbourhood(g, {0, 1}) == {0, 1}
    assert closed_odd_neighbourhood(g, {0, 3}) == {0, 1, 3}


@pytest.mark.parametrize("seed", range(8))
def test_local_complement_matches_brute_force(seed):
    g = _random_graph(seed)
    for u in sorted(g.vertices):
        assert local_complement(g, u).edges() == _brute_local_complement(g, u)


@pytest.mark.parametrize("seed", range(8))
def test_local_complement_is_involution(seed):
    g = _random_graph(seed)
    for u in sorted(g.vertices):
        assert local_complement(local_complement(g, u), u).edges() == g.edges()


@pytest.mark.parametrize("seed", range(8))
def test_pivot_is_triple_local_complement(seed):
    g = _random_graph(seed)
    for u, v in sorted(g.edges()):
        expected = local_complement(local_complement(local_complement(g, u), v), u)
        assert pivot(g, u, v).edges() == expected.edges()


def test_pivot_requires_edge():
    g = OpenGraph.from_edges(range(3), [(0, 1)])
    with pytest.raises(DiagramError):
        pivot(g, 0, 2)


@pytest.mark.parametrize("seed", range(6))
def test_odd_neighbourhood_after_local_complement(seed):
    g = _random_graph(seed, n=7)
    vertices = sorted(g.vertices)
    for u in vertices:
        after = local_complement(g, u)
        for size in (1, 2, 3):
            for subset in itertools.combinations(vertices, size):
                subset = frozenset(subset)
                odd = odd_neighbourhood(g, subset)
                if u in odd:
                    expected = odd ^ (g.neighbours(u) - subset)
                else:
                    expected = odd ^ (g.neighbours(u) & subset)
                assert odd_neighbourhood(after, subset) == expected


@pytest.mark.parametrize("seed", range(6))
def test_odd_neighbourhood_after_pivot(seed):
    g = _random_graph(seed, n=7, p=0.5)
    vertices = sorted(g.vertices)
    for u, v in sorted(g.edges()):
        after = pivot(g, u, v)
        for size in (1, 2, 3):
            for subset in itertools.combinations(vertices, size):
                subset = frozenset(subset)
                expected = set(odd_neighbourhood(g, subset))
                if len(subset & _closed(g, v)) % 2:
                    expected ^= _closed(g, u)
                if len(subset & _closed(g, u)) % 2:
                    expected ^= _closed(g, v)
                assert odd_neighbourhood(after, subset) == expected


def test_underlying_open_graph_of_graph_like(graph_like_factory):
    d = graph_like_factory(qubits=3, gate_count=25)
    g = underlying_open_graph(d)
    assert g.vertices == frozenset(d.spiders())
    assert len(g.inputs) == 3 and len(g.outputs) == 3
    for u, v in g.edges():
        assert d.edge_counts(u, v) == (0, 1)


def test_underlying_open_graph_rejects_non_graph_like():
    d = circuit_to_diagram(Circuit(2, (Gate.cnot(0, 1),)))
    with pytest.raises(DiagramError):
        underlying_open_graph(d)


def test_networkx_export():
    g = OpenGraph.from_edges(range(3), [(0, 1), (1, 2)], inputs=[0], outputs=[2])
    nxg = g.to_networkx()
    assert nx.is_connected(nxg)
    assert g.non_outputs == {0, 1}
    assert g.non_inputs == {1, 2}
