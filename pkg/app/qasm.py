import ast
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from app.circuit import Circuit, Gate
from app.config import settings
from app.enums import GateName
from app.errors import QasmParseError, ZxError
from app.phase import Phase

logger = logging.getLogger(__name__)

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

FIXED_GATES = {
    "h": Gate.h,
    "s": Gate.s,
    "sdg": Gate.sdg,
    "t": Gate.t,
    "tdg": Gate.tdg,
    "z": Gate.z,
    "x": Gate.x,
}
ROTATIONS = {"rz": Gate.zphase, "rx": Gate.xphase}
TWO_QUBIT = {"cx": Gate.cnot, "cz": Gate.cz, "swap": Gate.swap}

NAMED_Z_PHASES = {
    Phase.of(1, 2): "s",
    Phase.of(3, 2): "sdg",
    Phase.of(1, 4): "t",
    Phase.of(7, 4): "tdg",
    Phase.of(1): "z",
}

_COMMENT = re.compile(r"//[^\n]*")
_QREG = re.compile(r"^qreg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_GATE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*(.*)$", re.DOTALL)
_OPERAND = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")


@dataclass(frozen=True, slots=True)
class _Angle:
    """Значение вида rational + pi_coefficient·π."""

    rational: Fraction
    pi_coefficient: Fraction

    def __add__(self, other: "_Angle") -> "_Angle":
        return _Angle(self.rational + other.rational, self.pi_coefficient + other.pi_coefficient)

    def __neg__(self) -> "_Angle":
        return _Angle(-self.rational, -self.pi_coefficient)

    def scaled(self, factor: Fraction) -> "_Angle":
        return _Angle(self.rational * factor, self.pi_coefficient * factor)


def _evaluate(node: ast.AST) -> _Angle:
    if isinstance(node, ast.Expression):
        return _evaluate(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return _Angle(Fraction(str(node.value)), Fraction(0))
    if isinstance(node, ast.Name) and node.id == "pi":
        return _Angle(Fraction(0), Fraction(1))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _evaluate(node.operand)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp):
        left, right = _evaluate(node.left), _evaluate(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left + (-right)
        if isinstance(node.op, ast.Mult):
            if left.pi_coefficient == 0:
                return right.scaled(left.rational)
            if right.pi_coefficient == 0:
                return left.scaled(right.rational)
            raise ZxError("Произведение π на π не поддерживается")
        if isinstance(node.op, ast.Div):
            if right.pi_coefficient != 0 or right.rational == 0:
                raise ZxError("Делить можно только на ненулевое число")
            return left.scaled(1 / right.rational)
    raise ZxError("Неподдерживаемое выражение угла")


def parse_angle(text: str) -> Phase:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ZxError(f"Некорректное выражение угла: {text!r}") from exc
    value = _evaluate(tree)
    if value.rational == 0:
        coefficient = value.pi_coefficient
        if coefficient.denominator > settings.max_denominator:
            raise ZxError(f"Знаменатель угла {coefficient} превышает {settings.max_denominator}")
        return Phase(coefficient)
    radians = float(value.rational) + float(value.pi_coefficient) * Phase.of(1).radians
    return Phase.from_radians(radians)


def format_angle(phase: Phase) -> str:
    n, d = phase.numerator, phase.denominator
    if n == 0:
        return "0"
    head = "pi" if n == 1 else f"{n}*pi"
    return head if d == 1 else f"{head}/{d}"


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def parse_qasm(text: str) -> Circuit:
    source = _COMMENT.sub(lambda match: " " * len(match.group(0)), text)
    register: tuple[str, int] | None = None
    gates: list[Gate] = []
    offset = 0
    for match in re.finditer(r"[^;]*;|[^;]+$", source):
        raw = match.group(0)
        start = match.start() + (len(raw) - len(raw.lstrip()))
        statement = raw.strip()
        offset = match.end()
        if not statement:
            continue
        line, column = _position(source, start)
        if not statement.endswith(";"):
            raise QasmParseError("Ожидалась ';'", line, column)
        body = statement[:-1].strip()
        if not body:
            continue
        try:
            if body.startswith("OPENQASM"):
                if body.split()[-1] != "2.0":
                    raise ZxError("Поддерживается только OPENQASM 2.0")
                continue
            if body.startswith("include"):
                continue
            if body.startswith("qreg"):
                found = _QREG.match(body)
                if not found:
                    raise ZxError("Некорректное объявление регистра")
                if register is not None:
                    raise ZxError("Поддерживается только один квантовый регистр")
                register = (found.group(1), int(found.group(2)))
                continue
            if register is None:
                raise ZxError("Гейт до объявления регистра")
            gates.append(_parse_gate(body, register))
        except QasmParseError:
            raise
        except ZxError as exc:
            raise QasmParseError(str(exc), line, column) from exc
    if register is None:
        line, column = _position(source, offset)
        raise QasmParseError("Не найдено объявление qreg", line, column)
    logger.debug("QASM: %s гейтов на %s кубитах", len(gates), register[1])
    return Circuit(register[1], tuple(gates))


def _parse_gate(body: str, register: tuple[str, int]) -> Gate:
    found = _GATE.match(body)
    if not found:
        raise ZxError("Некорректная инструкция")
    name, params, operands = found.group(1), found.group(2), found.group(3)
    qubits = [_parse_operand(item.strip(), register) for item in operands.split(",")] if operands.strip() else []
    if name in FIXED_GATES:
        _expect(name, params, qubits, arity=1, with_angle=False)
        return FIXED_GATES[name](qubits[0])
    if name in ROTATIONS:
        _expect(name, params, qubits, arity=1, with_angle=True)
        return ROTATIONS[name](qubits[0], parse_angle(params))
    if name in TWO_QUBIT:
        _expect(name, params, qubits, arity=2, with_angle=False)
        if qubits[0] == qubits[1]:
            raise ZxError(f"Гейт {name} применён к одному кубиту дважды")
        return TWO_QUBIT[name](*qubits)
    raise ZxError(f"Неподдерживаемый гейт: {name}")


def _expect(name: str, params: str | None, qubits: list[int], arity: int, with_angle: bool) -> None:
    if with_angle and params is None:
        raise ZxError(f"Гейт {name} требует угол")
    if not with_angle and params is not None:
        raise ZxError(f"Гейт {name} не принимает параметры")
    if len(qubits) != arity:
        raise ZxError(f"Гейт {name} ожидает {arity} операнд(а)")


def _parse_operand(text: str, register: tuple[str, int]) -> int:
    found = _OPERAND.match(text)
    if not found:
        raise ZxError(f"Некорректный операнд: {text!r}")
    if found.group(1) != register[0]:
        raise ZxError(f"Неизвестный регистр: {found.group(1)}")
    index = int(found.group(2))
    if index >= register[1]:
        raise ZxError(f"Кубит {index} вне регистра размера {register[1]}")
    return index


def _emit_gate(gate: Gate) -> str:
    operands = ",".join(f"q[{q}]" for q in gate.qubits)
    if gate.name == GateName.H:
        return f"h {operands};"
    if gate.name == GateName.ZPHASE:
        named = NAMED_Z_PHASES.get(gate.phase)
        return f"{named} {operands};" if named else f"rz({format_angle(gate.phase)}) {operands};"
    if gate.name == GateName.XPHASE:
        if gate.phase == Phase.of(1):
            return f"x {operands};"
        return f"rx({format_angle(gate.phase)}) {operands};"
    keyword = {GateName.CNOT: "cx", GateName.CZ: "cz", GateName.SWAP: "swap"}[gate.name]
    return f"{keyword} {operands};"


def emit_qasm(c: Circuit) -> str:
    lines = [HEADER + f"qreg q[{c.qubit_count}];"]
    lines.extend(_emit_gate(gate) for gate in c.gates)
    return "\n".join(lines) + "\n"
