import math
from dataclasses import dataclass
from fractions import Fraction

from app.config import settings
from app.errors import ZxError

TWO = Fraction(2)


@dataclass(frozen=True, slots=True, order=True)
class Phase:
    """Угол вида (n/d)·π, всегда приведённый к полуинтервалу [0, 2)."""

    value: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value) % TWO)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> "Phase":
        if denominator <= 0:
            raise ZxError("Знаменатель фазы должен быть положительным")
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parse(cls, text: str) -> "Phase":
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ZxError(f"Некорректная фаза: {text!r}") from exc

    @classmethod
    def from_radians(
        cls,
        radians: float,
        max_denominator: int | None = None,
        tolerance: float | None = None,
    ) -> "Phase":
        limit = max_denominator or settings.max_denominator
        tol = settings.angle_tolerance if tolerance is None else tolerance
        if not math.isfinite(radians):
            raise ZxError("Угол должен быть конечным числом")
        ratio = Fraction(radians / math.pi).limit_denominator(limit)
        if abs(float(ratio) * math.pi - radians) > tol:
            raise ZxError(f"Угол {radians!r} не является рациональным кратным π со знаменателем ≤ {limit}")
        return cls(ratio)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def radians(self) -> float:
        return float(self.value) * math.pi

    def is_zero(self) -> bool:
        return self.value == 0

    def is_pauli(self) -> bool:
        return self.value.denominator == 1

    def is_clifford(self) -> bool:
        return self.value.denominator <= 2

    def is_proper_clifford(self) -> bool:
        return self.value.denominator == 2

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.value + other.value)

    def __sub__(self, other: "Phase") -> "Phase":
        return Phase(self.value - other.value)

    def __neg__(self) -> "Phase":
        return Phase(-self.value)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


ZERO = Phase()
PI = Phase.of(1)
HALF_PI = Phase.of(1, 2)
QUARTER_PI = Phase.of(1, 4)
