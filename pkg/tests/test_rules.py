import pytest

from app.circuit import Circuit, Gate, circuit_to_diagram
from app.diagram import ZxDiagram
from app.enums import EdgeKind, StepKind, VertexKind
from app.errors import RewriteError
from app.phase import HALF_PI, PI, QUARTER_PI, ZERO, Phase
from app.rules import (
    apply_antipode,
    apply_pi_copy,
    color_change,
    fuse,
    insert_boundary_dummy,
    is_graph_like,
    normalize_multiedges,
    remove_identity,
    to_graph_like,
)
from tests.helpers import assert_equivalent


def _wire(*spiders: tuple[VertexKind, Phase], kinds: list[EdgeKind] | None = None) -> tuple[ZxDiagram, list[int]]:
    """Один провод: вход, пауки по порядку, выход."""
    d = ZxDiagram()
    chain = [d.add_input(qubit=0, row=0)]
    for index, (kind, phase) in enumerate(spiders, start=1):
        chain.append(d.add_vertex(kind, phase, qubit=0, row=index))
    chain.append(d.add_output(qubit=0, row=len(spiders) + 1))
    kinds = kinds or [EdgeKind.SIMPLE] * (len(chain) - 1)
    for (a, b), kind in zip(zip(chain, chain[1:]), kinds):
        d.add_edge(a, b, kind)
    return d, chain


def test_fuse_adds_phases():
    d, (_, a, b, _) = _wire((VertexKind.Z, QUARTER_PI), (VertexKind.Z, HALF_PI))
    before = d.copy()
    fuse(d, a, b)
    assert d.spiders() == [a]
    assert d.phase(a) == Phase.of(3, 4)
    assert d.row(a) == 2
    assert_equivalent(before, d)


def test_fuse_turns_parallel_edges_into_loops():
    d, (_, a, b, _) = _wire((VertexKind.Z, ZERO), (VertexKind.Z, ZERO))
    d.add_edge(a, b, EdgeKind.HADAMARD)
    before = d.copy()
    fuse(d, a, b)
    assert d.self_loops(a) == (0, 1)
    assert_equivalent(before, d)


def test_fuse_preconditions():
    d, (i, a, b, _) = _wire((VertexKind.Z, ZERO), (VertexKind.X, ZERO))
    with pytest.raises(RewriteError, match="Z-паук и X-паук"):
        fuse(d, a, b)
    with pytest.raises(RewriteError):
        fuse(d, i, a)
    d2, (_, c, e, _) = _wire(
        (VertexKind.Z, ZERO),
        (VertexKind.Z, ZERO),
        kinds=[EdgeKind.SIMPLE, EdgeKind.HADAMARD, EdgeKind.SIMPLE],
    )
    with pytest.raises(RewriteError):
        fuse(d2, c, e)


def test_color_change_keeps_semantics():
    d, (i, x, o) = _wire((VertexKind.X, QUARTER_PI))
    before = d.copy()
    color_change(d, x)
    assert d.kind(x) == VertexKind.Z
    assert d.edge_kind(i, x) == EdgeKind.HADAMARD
    assert d.edge_kind(x, o) == EdgeKind.HADAMARD
    assert_equivalent(before, d)


def test_remove_identity_composes_edge_kinds():
    d, (i, v, o) = _wire((VertexKind.Z, ZERO), kinds=[EdgeKind.HADAMARD, EdgeKind.SIMPLE])
    before = d.copy()
    remove_identity(d, v)
    assert v not in d
    assert d.edge_kind(i, o) == EdgeKind.HADAMARD
    assert_equivalent(before, d)


def test_remove_identity_rejects_phase_and_degree():
    d, (_, v, _) = _wire((VertexKind.Z, HALF_PI))
    with pytest.raises(RewriteError):
        remove_identity(d, v)
    d, (_, v, _) = _wire((VertexKind.Z, ZERO))
    extra = d.add_vertex(VertexKind.Z)
    d.add_edge(v, extra)
    with pytest.raises(RewriteError):
        remove_identity(d, v)


def test_normalize_cancels_hadamard_pairs_and_loops():
    d = ZxDiagram()
    i0, i1 = d.add_input(0, 0), d.add_input(1, 0)
    a = d.add_vertex(VertexKind.Z, QUARTER_PI, qubit=0, row=1)
    b = d.add_vertex(VertexKind.Z, ZERO, qubit=1, row=1)
    o0, o1 = d.add_output(0, 2), d.add_output(1, 2)
    d.add_edge(i0, a)
    d.add_edge(a, o0)
    d.add_edge(i1, b)
    d.add_edge(b, o1)
    d.add_edge(a, b, EdgeKind.HADAMARD, count=3)
    d.add_edge(a, a, EdgeKind.HADAMARD)
    before = d.copy()
    normalize_multiedges(d)
    assert d.edge_counts(a, b) == (0, 1)
    assert d.self_loops(a) == (0, 0)
    assert d.phase(a) == Phase.of(5, 4)
    assert_equivalent(before, d)


def test_normalize_reduces_z_x_parallel_edges():
    d = ZxDiagram()
    i0, i1 = d.add_input(0, 0), d.add_input(1, 0)
    z = d.add_vertex(VertexKind.Z, qubit=0, row=1)
    x = d.add_vertex(VertexKind.X, qubit=1, row=1)
    o0, o1 = d.add_output(0, 2), d.add_output(1, 2)
    for u, v in ((i0, z), (z, o0), (i1, x), (x, o1)):
        d.add_edge(u, v)
    d.add_edge(z, x, count=3)
    before = d.copy()
    normalize_multiedges(d)
    assert d.edge_counts(z, x) == (1, 0)
    assert_equivalent(before, d)


def test_antipode():
    d = ZxDiagram()
    i0, i1 = d.add_input(0, 0), d.add_input(1, 0)
    z = d.add_vertex(VertexKind.Z, qubit=0, row=1)
    x = d.add_vertex(VertexKind.X, qubit=1, row=1)
    o0, o1 = d.add_output(0, 2), d.add_output(1, 2)
    for u, v in ((i0, z), (z, o0), (i1, x), (x, o1)):
        d.add_edge(u, v)
    d.add_edge(z, x, count=2)
    before = d.copy()
    apply_antipode(d, z, x)
    assert not d.has_edge(z, x)
    assert_equivalent(before, d)
    with pytest.raises(RewriteError):
        apply_antipode(d, z, x)


def test_pi_copy_through_wire_spider():
    d = ZxDiagram()
    i = d.add_input(0, 0)
    x = d.add_vertex(VertexKind.X, PI, qubit=0, row=1)
    z = d.add_vertex(VertexKind.Z, QUARTER_PI, qubit=0, row=2)
    o1, o2 = d.add_output(0, 3), d.add_output(1, 3)
    d.add_edge(i, x)
    d.add_edge(x, z)
    d.add_edge(z, o1)
    d.add_edge(z, o2, EdgeKind.HADAMARD)
    before = d.copy()
    apply_pi_copy(d, x, z)
    assert d.phase(z) == -QUARTER_PI
    assert x not in d
    copies = [v for v in d.spiders() if d.kind(v) == VertexKind.X]
    assert len(copies) == 2 and all(d.phase(v) == PI for v in copies)
    assert_equivalent(before, d)


def test_pi_copy_of_state():
    d = ZxDiagram()
    x = d.add_vertex(VertexKind.X, PI)
    z = d.add_vertex(VertexKind.Z, HALF_PI)
    o1, o2 = d.add_output(0, 1), d.add_output(1, 1)
    d.add_edge(x, z)
    d.add_edge(z, o1)
    d.add_edge(z, o2)
    before = d.copy()
    apply_pi_copy(d, x, z)
    assert z not in d
    assert len(d.spiders()) == 2
    assert_equivalent(before, d)


def test_pi_copy_requires_x_pi():
    d = ZxDiagram()
    x = d.add_vertex(VertexKind.X, HALF_PI)
    z = d.add_vertex(VertexKind.Z)
    o = d.add_output()
    d.add_edge(x, z)
    d.add_edge(z, o)
    with pytest.raises(RewriteError):
        apply_pi_copy(d, x, z)


def test_is_graph_like_reports_conditions():
    d = circuit_to_diagram(Circuit(2, (Gate.cnot(0, 1),)))
    report = is_graph_like(d)
    assert not report.ok
    assert any(v.startswith("condition 1") for v in report.violations)


def test_insert_boundary_dummy_keeps_semantics():
    d, (i, v, o) = _wire((VertexKind.Z, HALF_PI), kinds=[EdgeKind.SIMPLE, EdgeKind.HADAMARD])
    before = d.copy()
    dummy = insert_boundary_dummy(d, o)
    assert d.edge_kind(dummy, v) == EdgeKind.HADAMARD
    assert d.edge_kind(o, dummy) == EdgeKind.SIMPLE
    assert_equivalent(before, d)


@pytest.mark.parametrize("p_t", [0.0, 0.25])
def test_to_graph_like_preserves_semantics(circuit_factory, p_t):
    c = circuit_factory(qubits=3, gate_count=30, p_t=p_t)
    d = circuit_to_diagram(c)
    snapshot = d.dumps()
    steps = []
    g = to_graph_like(d, steps)
    assert is_graph_like(g).ok
    assert_equivalent(c, g)
    assert all(step.kind in (StepKind.ID_REMOVAL, StepKind.MULTIEDGE_FIX) for step in steps)
    assert d.dumps() == snapshot


def test_to_graph_like_is_idempotent(graph_like_factory):
    g = graph_like_factory(qubits=3, gate_count=25)
    again = to_graph_like(g)
    assert again.is_isomorphic(g)


def test_to_graph_like_handles_bare_wires():
    g = to_graph_like(circuit_to_diagram(Circuit(2, ())))
    assert is_graph_like(g).ok
    assert len(g.spiders()) == 4
    assert_equivalent(Circuit(2, ()), g)
