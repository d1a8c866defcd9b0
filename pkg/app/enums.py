from enum import Enum


class VertexKind(str, Enum):
    BOUNDARY = "boundary"
    Z = "z"
    X = "x"


class EdgeKind(str, Enum):
    SIMPLE = "s"
    HADAMARD = "h"

    def toggled(self) -> "EdgeKind":
        return EdgeKind.HADAMARD if self == EdgeKind.SIMPLE else EdgeKind.SIMPLE

    def compose(self, other: "EdgeKind") -> "EdgeKind":
        return self if other == EdgeKind.SIMPLE else self.toggled()


class GateName(str, Enum):
    H = "h"
    ZPHASE = "zphase"
    XPHASE = "xphase"
    CNOT = "cnot"
    CZ = "cz"
    SWAP = "swap"


class StepKind(str, Enum):
    LCOMP = "lcomp_simp"
    PIVOT = "pivot_simp"
    BOUNDARY_PIVOT = "boundary_pivot"
    BOUNDARY_LCOMP = "boundary_lcomp"
    ID_REMOVAL = "id_removal"
    MULTIEDGE_FIX = "multiedge_fix"


class BenchMethod(str, Enum):
    ORIGINAL = "original"
    ORIGINAL_PLUS = "original_plus"
    NAIVE = "naive"
    FULL = "full"


class NormalFormLayer(str, Enum):
    H_IN = "h_in"
    S_IN = "s_in"
    CZ_IN = "cz_in"
    CNOT = "cnot"
    H_MID = "h_mid"
    CZ_OUT = "cz_out"
    S_OUT = "s_out"
    H_OUT = "h_out"


VERTEX_KIND_LABELS = {
    VertexKind.BOUNDARY: "граница",
    VertexKind.Z: "Z-паук",
    VertexKind.X: "X-паук",
}

STEP_LABELS = {
    StepKind.LCOMP: "Локальное дополнение",
    StepKind.PIVOT: "Пивот",
    StepKind.BOUNDARY_PIVOT: "Пивот у границы",
    StepKind.BOUNDARY_LCOMP: "Локальное дополнение у границы",
    StepKind.ID_REMOVAL: "Удаление тождества",
    StepKind.MULTIEDGE_FIX: "Нормализация кратных рёбер",
}

METHOD_LABELS = {
    BenchMethod.ORIGINAL: "Исходная схема",
    BenchMethod.ORIGINAL_PLUS: "Исходная + локальные сокращения",
    BenchMethod.NAIVE: "Наивный (клиффордовы блоки)",
    BenchMethod.FULL: "Полный ZX-конвейер",
}

NORMAL_FORM_ORDER = tuple(NormalFormLayer)

TWO_QUBIT_GATES = {GateName.CNOT, GateName.CZ, GateName.SWAP}
