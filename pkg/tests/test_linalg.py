import itertools

import numpy as np
import pytest

from app.errors import ExtractionError
from app.linalg import F2Matrix, RowOpLog, gauss_jordan, parity_to_cnots


def _random_matrix(rng, rows: int, cols: int) -> F2Matrix:
    return F2Matrix(rng.integers(0, 2, size=(rows, cols)))


def _random_invertible(rng, n: int) -> F2Matrix:
    while True:
        m = _random_matrix(rng, n, n)
        if m.rank() == n:
            return m


def _span_rank(m: F2Matrix) -> int:
    span = set()
    for coefficients in itertools.product((0, 1), repeat=m.rows):
        vector = np.zeros(m.cols, dtype=np.uint8)
        for c, row in zip(coefficients, m.bits):
            if c:
                vector ^= row
        span.add(vector.tobytes())
    return len(span).bit_length() - 1


def _apply_cnots(gates, bits: list[int]) -> list[int]:
    bits = list(bits)
    for gate in gates:
        control, target = gate.qubits
        bits[target] ^= bits[control]
    return bits


def test_small_reduction():
    m = F2Matrix.from_rows([[1, 1], [0, 1]])
    reduced, log = gauss_jordan(m)
    assert reduced.is_identity()
    assert log.ops == [(1, 0)]
    assert m.tolist() == [[1, 1], [0, 1]]


def test_lowest_row_is_added_without_swaps():
    m = F2Matrix.from_rows([[0, 1], [1, 0]])
    reduced, log = gauss_jordan(m)
    assert reduced.is_identity()
    assert log.ops[0] == (1, 0)


def test_rejects_non_matrix():
    with pytest.raises(ValueError):
        F2Matrix(np.zeros(3))
    with pytest.raises(ValueError):
        F2Matrix.identity(2).add_row(1, 1)


@pytest.mark.parametrize("block_size", [0, 2, 3])
def test_log_replays_to_reduced_form(rng, block_size):
    for _ in range(10):
        m = _random_matrix(rng, 8, 12)
        reduced, log = gauss_jordan(m, block_size=block_size)
        assert log.replay(m) == reduced
        assert m.rank() == _span_rank(m)


def test_block_mode_gives_same_reduced_matrix(rng):
    for _ in range(10):
        m = _random_matrix(rng, 9, 9)
        plain, _ = gauss_jordan(m, block_size=0)
        blocked, _ = gauss_jordan(m, block_size=3)
        assert plain == blocked


def test_reduced_form_is_echelon(rng):
    m = _random_matrix(rng, 6, 10)
    reduced, _ = gauss_jordan(m)
    leads = []
    for row in reduced.tolist():
        if any(row):
            leads.append(row.index(1))
    assert leads == sorted(leads)
    for lead in leads:
        assert sum(r[lead] for r in reduced.tolist()) == 1


def test_parity_to_cnots_realises_matrix(rng):
    for n in (1, 3, 5):
        m = _random_invertible(rng, n)
        gates = parity_to_cnots(m)
        for x in itertools.product((0, 1), repeat=n):
            expected = (m.bits.astype(int) @ np.array(x)) % 2
            assert _apply_cnots(gates, list(x)) == [int(b) for b in expected]


def test_parity_to_cnots_rejects_bad_matrices():
    with pytest.raises(ExtractionError):
        parity_to_cnots(F2Matrix.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(ExtractionError):
        parity_to_cnots(F2Matrix.from_rows([[1, 0, 1]]))


def test_matrix_algebra():
    a = F2Matrix.from_rows([[1, 1], [0, 1]])
    assert not a.is_identity() and a.rank() == 2
    assert a.tolist() == [[1, 1], [0, 1]]
    assert str(a) == "11\n01"
    log = RowOpLog()
    log.append(0, 1)
    log.extend([(1, 0)])
    assert len(log) == 2 and list(log) == [(0, 1), (1, 0)]
