"""Линейная алгебра над F2: матрицы, журнал строковых операций, метод Гаусса-Жордана."""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from app.circuit import Gate
from app.config import settings
from app.errors import ExtractionError

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class F2Matrix:
    bits: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.bits, dtype=np.uint8)
        if array.ndim != 2:
            raise ValueError("Матрица над F2 должна быть двумерной")
        self.bits = array & 1

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if not rows:
            return cls(np.zeros((0, cols or 0), dtype=np.uint8))
        return cls(np.array([[int(bool(x)) for x in row] for row in rows], dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.bits.copy())

    def row(self, index: int) -> list[int]:
        return [int(x) for x in self.bits[index]]

    def tolist(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def add_row(self, source: int, target: int) -> None:
        if source == target:
            raise ValueError("Нельзя прибавить строку к самой себе")
        self.bits[target] ^= self.bits[source]

    def rank(self) -> int:
        reduced, _ = gauss_jordan(self)
        return int(np.count_nonzero(reduced.bits.any(axis=1)))

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self.bits, np.eye(self.rows, dtype=np.uint8)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __str__(self) -> str:
        return "\n".join("".join(str(x) for x in row) for row in self.tolist())


@dataclass(slots=True)
class RowOpLog:
    """Последовательность операций «строка source прибавляется к строке target»."""

    ops: list[tuple[int, int]] = field(default_factory=list)

    def append(self, source: int, target: int) -> None:
        self.ops.append((source, target))

    def extend(self, ops: Iterable[tuple[int, int]]) -> None:
        self.ops.extend(ops)

    def replay(self, m: F2Matrix) -> F2Matrix:
        result = m.copy()
        for source, target in self.ops:
            result.add_row(source, target)
        return result

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)


# ─── Исключение ───


def _eliminate_column(m: F2Matrix, log: RowOpLog, col: int, pivot_row: int) -> bool:
    candidates = np.flatnonzero(m.bits[pivot_row:, col])
    if candidates.size == 0:
        return False
    found = pivot_row + int(candidates[0])
    if found != pivot_row:
        # без перестановок: строка с единицей прибавляется к текущей
        m.add_row(found, pivot_row)
        log.append(found, pivot_row)
    for other in np.flatnonzero(m.bits[:, col]):
        other = int(other)
        if other != pivot_row:
            m.add_row(pivot_row, other)
            log.append(pivot_row, other)
    return True


def _drop_duplicate_sections(m: F2Matrix, log: RowOpLog, start: int, stop: int, pivot_row: int) -> None:
    seen: dict[bytes, int] = {}
    for index in range(pivot_row, m.rows):
        section = m.bits[index, start:stop]
        if not section.any():
            continue
        key = section.tobytes()
        if key in seen:
            m.add_row(seen[key], index)
            log.append(seen[key], index)
        else:
            seen[key] = index


def gauss_jordan(m: F2Matrix, block_size: int | None = None) -> tuple[F2Matrix, RowOpLog]:
    """Приводит копию матрицы к ступенчатому виду по строкам.

    Опорный столбец выбирается самый левый, опорная строка с наименьшим номером.
    При block_size > 0 столбцы обрабатываются секциями: внутри секции сначала
    сокращаются строки с одинаковым фрагментом, затем идёт обычное исключение.
    Приведённая матрица от режима не зависит, меняется только журнал.
    """
    reduced = m.copy()
    log = RowOpLog()
    block = settings.gauss_block_size if block_size is None else block_size
    pivot_row = 0
    if block and block > 0:
        for start in range(0, reduced.cols, block):
            stop = min(start + block, reduced.cols)
            if pivot_row < reduced.rows:
                _drop_duplicate_sections(reduced, log, start, stop, pivot_row)
            for col in range(start, stop):
                if pivot_row < reduced.rows and _eliminate_column(reduced, log, col, pivot_row):
                    pivot_row += 1
    else:
        for col in range(reduced.cols):
            if pivot_row >= reduced.rows:
                break
            if _eliminate_column(reduced, log, col, pivot_row):
                pivot_row += 1
    logger.debug("Гаусс-Жордан %sx%s: ранг %s, операций %s", m.rows, m.cols, pivot_row, len(log))
    return reduced, log


def parity_to_cnots(matrix: F2Matrix) -> list[Gate]:
    """CNOT-схема, переводящая базисное состояние x в matrix·x."""
    if matrix.rows != matrix.cols:
        raise ExtractionError("Матрица чётности должна быть квадратной")
    reduced, log = gauss_jordan(matrix)
    if not reduced.is_identity():
        raise ExtractionError("Матрица чётности вырождена")
    return [Gate.cnot(source, target) for source, target in reversed(log.ops)]
