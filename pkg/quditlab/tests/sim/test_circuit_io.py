"""
sim/circuit_io.py 테스트
"""

import math

import pytest

from quditlab.core.exceptions import CircuitParseError
from quditlab.schemas.label import GBSLabel
from quditlab.sim.circuit_io import dump_circuit, parse_circuit
from quditlab.sim.engine import evolve
from quditlab.sim.entangled import gbs
from quditlab.sim.protocols import full_register_circuit, phase_check_circuit
from quditlab.sim.tensor import same_state, zero_state

GHZ_TEXT = """
# Ψ-_010 준비
REGISTER 2 3
H 0
Z 0        # 위상 뒤집기
CNOT 0 1
CNOT 0 2
X 1
MEASURE 0 1 2
"""

pytestmark = pytest.mark.unit


class TestParseCircuit:
    """회로 텍스트 파싱"""

    def test_ghz_preparation(self):
        circuit = parse_circuit(GHZ_TEXT)

        assert (circuit.d, circuit.n) == (2, 3)
        assert circuit.gate_count == 5
        assert len(circuit.measure_steps) == 1
        state = evolve(circuit, zero_state(2, 3))
        assert same_state(state, gbs(GBSLabel.parse("2:3:1:1,0")))

    def test_qudit_gates(self):
        """H_d + C_{X_d}† 로 GBS(0, 0) 준비"""
        circuit = parse_circuit("REGISTER 3 2\nHD 0\nCXDG 0 1\n")
        assert same_state(evolve(circuit, zero_state(3, 2)), gbs(GBSLabel.parse("3:2:0:0")))

    def test_p_gate(self):
        circuit = parse_circuit(f"REGISTER 2 1\nP 0 {math.pi / 8}\n")
        expected = complex(math.cos(math.pi / 8), math.sin(math.pi / 8))
        assert circuit.steps[0].gate.matrix[1, 1] == pytest.approx(expected)

    def test_case_insensitive_names(self):
        circuit = parse_circuit("register 2 2\ncnot 0 1\nsdg 1\n")
        assert circuit.gate_count == 2

    @pytest.mark.parametrize(
        "text, line_no",
        [
            ("H 0\n", 1),
            ("REGISTER 2 2\nFOO 0\n", 2),
            ("REGISTER 2 2\nH 5\n", 2),
            ("REGISTER 2 2\nCNOT 0\n", 2),
            ("REGISTER 2 2\nCNOT 0 0\n", 2),
            ("REGISTER 3 2\nH 0\n", 2),
            ("REGISTER 2 2\nP 0\n", 2),
            ("REGISTER 2 2\nP 0 abc\n", 2),
            ("REGISTER 2 2\n\n# c\nMEASURE\n", 4),
            ("REGISTER 2 2\nREGISTER 2 2\n", 2),
            ("REGISTER 1 2\n", 1),
            ("REGISTER 2 2\nH x\n", 2),
        ],
    )
    def test_errors_report_line(self, text, line_no):
        """문법 오류는 행 번호와 함께 CircuitParseError"""
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit(text)
        assert exc.value.line_no == line_no

    def test_missing_header(self):
        with pytest.raises(CircuitParseError):
            parse_circuit("# only comments\n")


class TestDumpCircuit:
    """회로 직렬화"""

    def test_dump_protocol_circuits(self):
        """프로토콜 회로를 쓰고 다시 읽으면 같은 상태"""
        stored = GBSLabel.parse("3:2:1:2")
        for circuit in (phase_check_circuit(3, 2), full_register_circuit(stored)):
            text = dump_circuit(circuit)
            parsed = parse_circuit(text)
            assert parsed.gate_count == circuit.gate_count
            initial = zero_state(circuit.d, circuit.n)
            assert same_state(evolve(parsed, initial), evolve(circuit, initial))

    def test_dump_text(self):
        text = dump_circuit(parse_circuit("REGISTER 3 2\nHDG 1\nCZD 0 1\nMEASURE 1\n"))
        assert text == "REGISTER 3 2\nHDG 1\nCZD 0 1\nMEASURE 1\n"
