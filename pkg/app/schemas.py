from pydantic import BaseModel, Field, field_validator, model_validator

from app.enums import BenchMethod, EdgeKind, NormalFormLayer, StepKind, VertexKind


class VertexDocument(BaseModel):
    id: int
    kind: VertexKind
    phase: str = "0/1"
    qubit: int | None = None
    row: int | None = None


class DiagramDocument(BaseModel):
    vertices: list[VertexDocument] = Field(default_factory=list)
    edges: list[tuple[int, int, EdgeKind]] = Field(default_factory=list)
    inputs: list[int] = Field(default_factory=list)
    outputs: list[int] = Field(default_factory=list)


class GateStats(BaseModel):
    total: int = 0
    two_qubit: int = 0
    t_like: int = 0
    h_count: int = 0


class SimpStep(BaseModel):
    kind: StepKind
    vertices: list[int] = Field(default_factory=list)
    note: str | None = None


class GraphLikeReport(BaseModel):
    ok: bool
    violations: list[str] = Field(default_factory=list)


class FlowCheck(BaseModel):
    ok: bool
    violation: str | None = None


class LayerDocument(BaseModel):
    layer: NormalFormLayer
    gates: list[str] = Field(default_factory=list)


class BenchConfig(BaseModel):
    qubits: int = Field(default=8, ge=1)
    gate_count: int = Field(default=800, ge=0)
    p_cnot: float = 0.3
    p_t: float = 0.0
    p_t_values: list[float] = Field(default_factory=list)
    seeds: list[int] = Field(default_factory=lambda: [0])
    methods: list[BenchMethod] = Field(default_factory=lambda: list(BenchMethod))

    @field_validator("p_cnot", "p_t")
    @classmethod
    def _check_probability(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError("Вероятность должна лежать в [0, 1]")
        return value

    @field_validator("p_t_values")
    @classmethod
    def _check_probabilities(cls, values: list[float]) -> list[float]:
        for value in values:
            if not 0.0 <= value <= 1.0:
                raise ValueError("Вероятность должна лежать в [0, 1]")
        return values

    @model_validator(mode="after")
    def _check_sum(self) -> "BenchConfig":
        largest_t = max([self.p_t, *self.p_t_values])
        if self.p_cnot + largest_t > 1.0 + 1e-12:
            raise ValueError("Сумма p_cnot и p_t не может превышать 1")
        if self.p_cnot > 0 and self.qubits < 2:
            raise ValueError("Для CNOT нужно не меньше двух кубитов")
        return self


class BenchRow(BaseModel):
    p_t: float
    method: BenchMethod
    mean_total: float
    mean_two_qubit: float
    mean_t: float


class BenchReport(BaseModel):
    rows: list[BenchRow] = Field(default_factory=list)
    verified: bool
    verification_failures: int = 0
    message: str


class OptimizeReport(BaseModel):
    before: GateStats
    after: GateStats
    verified: bool | None = None
    message: str
