import pytest

from app.circuit import Circuit, Gate
from app.errors import QasmParseError, ZxError
from app.phase import HALF_PI, PI, QUARTER_PI, Phase
from app.qasm import emit_qasm, format_angle, parse_angle, parse_qasm

SAMPLE = """OPENQASM 2.0;
include "qelib1.inc";
// комментарий
qreg q[3];
h q[0];
cx q[0], q[1];
rz(3*pi/4) q[2];
rx(-pi/2) q[1];
t q[2]; tdg q[0];
cz q[1],q[2];
swap q[0], q[2];
"""


def test_parse_sample():
    c = parse_qasm(SAMPLE)
    assert c.qubit_count == 3
    assert c.gates == (
        Gate.h(0),
        Gate.cnot(0, 1),
        Gate.zphase(2, Phase.of(3, 4)),
        Gate.xphase(1, Phase.of(3, 2)),
        Gate.t(2),
        Gate.tdg(0),
        Gate.cz(1, 2),
        Gate.swap(0, 2),
    )


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("pi", PI),
        ("pi/2", HALF_PI),
        ("0.25*pi", QUARTER_PI),
        ("-pi/4", Phase.of(7, 4)),
        ("2*pi", Phase.of(0)),
        ("1.5707963267948966", HALF_PI),
        ("(pi + pi/2)", Phase.of(3, 2)),
    ],
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == expected


@pytest.mark.parametrize("text", ["1.0", "pi/", "foo", "pi**2"])
def test_parse_angle_rejects(text):
    with pytest.raises(ZxError):
        parse_angle(text)


def test_format_angle():
    assert format_angle(Phase.of(0)) == "0"
    assert format_angle(PI) == "pi"
    assert format_angle(Phase.of(3, 4)) == "3*pi/4"
    assert format_angle(QUARTER_PI) == "pi/4"


def test_emit_then_parse_is_stable():
    c = parse_qasm(SAMPLE)
    text = emit_qasm(c)
    assert text.startswith("OPENQASM 2.0;")
    assert parse_qasm(text) == c
    assert emit_qasm(parse_qasm(text)) == text


def test_emit_uses_named_gates():
    text = emit_qasm(Circuit(1, (Gate.s(0), Gate.t(0), Gate.x(0), Gate.zphase(0, Phase.of(1, 8)))))
    assert "s q[0];" in text
    assert "t q[0];" in text
    assert "x q[0];" in text
    assert "rz(pi/8) q[0];" in text


def test_error_position():
    with pytest.raises(QasmParseError) as info:
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n")
    assert info.value.line == 3
    assert info.value.column == 1


@pytest.mark.parametrize(
    "text",
    [
        "OPENQASM 2.0;\nqreg q[2];\nh q[5];\n",
        "OPENQASM 2.0;\nh q[0];\n",
        "OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[0];\n",
        "OPENQASM 2.0;\nqreg q[2];\nh q[0]\n",
        "OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n",
        "OPENQASM 3.0;\nqreg q[2];\n",
        "OPENQASM 2.0;\n",
    ],
)
def test_malformed_programs(text):
    with pytest.raises(QasmParseError):
        parse_qasm(text)
