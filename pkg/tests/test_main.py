import json

import pytest

from app.config import settings
from app.main import cli_main
from app.qasm import parse_qasm
from app.schemas import SimpStep
from app.semantics import circuits_equivalent

PROGRAM = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
h q[0];
cx q[0],q[1];
t q[1];
cx q[1],q[2];
s q[2];
cx q[0],q[1];
h q[2];
tdg q[0];
cz q[0],q[2];
"""

CLIFFORD = """OPENQASM 2.0;
qreg q[2];
h q[0];
cx q[0],q[1];
s q[1];
cz q[0],q[1];
"""


@pytest.fixture
def program(tmp_path):
    path = tmp_path / "in.qasm"
    path.write_text(PROGRAM, encoding="utf-8")
    return path


def test_optimize_writes_equivalent_circuit(program, tmp_path, capsys):
    output = tmp_path / "out.qasm"
    log = tmp_path / "steps.jsonl"
    assert cli_main(["optimize", str(program), "-o", str(output), "--log", str(log)]) == 0
    optimized = parse_qasm(output.read_text(encoding="utf-8"))
    assert circuits_equivalent(parse_qasm(PROGRAM), optimized)
    for line in log.read_text(encoding="utf-8").splitlines():
        SimpStep.model_validate_json(line)
    report = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert report["verified"] is True


def test_optimize_to_stdout(program, capsys):
    assert cli_main(["optimize", str(program)]) == 0
    assert capsys.readouterr().out.startswith("OPENQASM 2.0;")


def test_clifford_layers(tmp_path):
    source = tmp_path / "c.qasm"
    source.write_text(CLIFFORD, encoding="utf-8")
    layers = tmp_path / "layers.json"
    output = tmp_path / "nf.qasm"
    code = cli_main(["optimize", str(source), "--clifford-nf", "--layers", str(layers), "-o", str(output)])
    assert code == 0
    documents = json.loads(layers.read_text(encoding="utf-8"))
    assert [doc["layer"] for doc in documents][0] == "h_in"
    assert circuits_equivalent(parse_qasm(CLIFFORD), parse_qasm(output.read_text(encoding="utf-8")))


def test_usage_errors(program, tmp_path):
    assert cli_main(["optimize", str(program), "--clifford-nf"]) == 2
    assert cli_main(["optimize", str(program), "--layers", str(tmp_path / "x.json")]) == 2
    assert cli_main(["optimize", str(tmp_path / "missing.qasm")]) == 2
    broken = tmp_path / "broken.qasm"
    broken.write_text("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n", encoding="utf-8")
    assert cli_main(["stats", str(broken)]) == 2
    assert cli_main(["unknown"]) == 2


def test_verify(program, tmp_path):
    other = tmp_path / "other.qasm"
    other.write_text(PROGRAM + "t q[2];\n", encoding="utf-8")
    assert cli_main(["verify", str(program), str(program)]) == 0
    assert cli_main(["verify", str(program), str(other)]) == 1


def test_stats(program, capsys):
    assert cli_main(["stats", str(program)]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats == {"total": 9, "two_qubit": 4, "t_like": 2, "h_count": 2}


def test_bench(tmp_path, capsys):
    csv_path = tmp_path / "bench.csv"
    code = cli_main(
        ["bench", "--qubits", "2", "--gates", "10", "--p-t", "0,0.1", "--seeds", "2", "--csv", str(csv_path)]
    )
    assert code == 0
    assert len(csv_path.read_text(encoding="utf-8").splitlines()) == 1 + 2 * 4
    assert "original" in capsys.readouterr().out


def test_bench_rejects_bad_probabilities():
    assert cli_main(["bench", "--qubits", "2", "--p-cnot", "0.9", "--p-t", "0.5"]) == 2


def test_unknown_log_level_is_a_usage_error(program, monkeypatch, capsys):
    monkeypatch.setattr(settings, "log_level", "LOUD")
    assert cli_main(["stats", str(program)]) == 2
    assert "LOUD" in capsys.readouterr().err
