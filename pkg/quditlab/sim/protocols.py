"""
판별 / 교정 프로토콜 회로 구성

각 add_* 함수는 주어진 회로에 단계를 덧붙인 새 회로를 반환한다. 시스템 와이어와
보조 와이어 위치를 인자로 받으므로 단독 회로와 전체 레지스터 회로가 같은 코드를 쓴다.
C_{X_d}(a -> b) 는 a 가 제어, b 가 대상이다.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from quditlab.core.exceptions import InvalidDimension
from quditlab.schemas.circuit import Circuit
from quditlab.schemas.gate import GateMatrix
from quditlab.schemas.label import GBSLabel
from quditlab.sim import gates


@dataclass(frozen=True)
class GateSet:
    """프로토콜에 쓰이는 게이트 묶음

    qubit_form=True (d=2 전용) 이면 H, CNOT, CZ, X 큐비트 게이트를 쓴다.
    """

    d: int
    qubit_form: bool = False

    def __post_init__(self) -> None:
        if self.qubit_form and self.d != 2:
            raise InvalidDimension("큐비트 게이트 묶음은 d=2 에서만 쓸 수 있습니다")

    @cached_property
    def h(self) -> GateMatrix:
        return gates.qubit_gate("H") if self.qubit_form else gates.gen_H(self.d)

    @cached_property
    def hdg(self) -> GateMatrix:
        return gates.qubit_gate("H") if self.qubit_form else gates.gen_H(self.d, adjoint=True)

    @cached_property
    def cx(self) -> GateMatrix:
        return gates.qubit_gate("CNOT") if self.qubit_form else gates.controlled_shift(self.d)

    @cached_property
    def cxdg(self) -> GateMatrix:
        if self.qubit_form:
            return gates.qubit_gate("CNOT")
        return gates.controlled_shift(self.d, adjoint=True)

    @cached_property
    def cz(self) -> GateMatrix:
        return gates.qubit_gate("CZ") if self.qubit_form else gates.controlled_Zpow(self.d)

    @cached_property
    def up(self) -> GateMatrix:
        """|k> -> |k+1>"""
        return gates.qubit_gate("X") if self.qubit_form else gates.gen_X(self.d, adjoint=True)


def add_prepare_digit(circuit: Circuit, gs: GateSet, wire: int, k: int) -> Circuit:
    """|0> 인 와이어를 |k> 로 준비 (X_d† 를 k 번)"""
    for _ in range(k % circuit.d):
        circuit = circuit.gate(gs.up, wire)
    return circuit


def add_preparation(
    circuit: Circuit,
    gs: GateSet,
    system: Sequence[int],
    p: int,
    q: Sequence[int],
    deltas: Sequence[float] | None = None,
) -> Circuit:
    """|0...0> 에서 e^{iδ_j} 가 붙은 GBS(p, q) 준비"""
    head = system[0]
    circuit = circuit.gate(gs.h, head)
    if p % circuit.d:
        circuit = circuit.gate(gates.gen_Z(circuit.d).power(p % circuit.d), head)
    if deltas is not None and any(deltas):
        circuit = circuit.gate(gates.branch_phase(deltas), head)
    for wire, offset in zip(system[1:], q, strict=True):
        circuit = circuit.gate(gs.cxdg, head, wire)
        circuit = add_prepare_digit(circuit, gs, wire, offset)
    return circuit


def add_phase_check(
    circuit: Circuit, gs: GateSet, system: Sequence[int], ancilla: int
) -> Circuit:
    """[H_d on A] -> C_{X_d}(A -> 각 시스템 와이어) -> [H_d† on A]; 결과 p"""
    circuit = circuit.gate(gs.h, ancilla)
    for wire in system:
        circuit = circuit.gate(gs.cx, ancilla, wire)
    return circuit.gate(gs.hdg, ancilla)


def add_parity_check(
    circuit: Circuit, gs: GateSet, system: Sequence[int], i: int, ancilla: int
) -> Circuit:
    """C_{X_d}(시스템 i-1 -> A) 다음 C_{X_d}†(시스템 i -> A); 결과 q_i - q_{i-1}"""
    circuit = circuit.gate(gs.cx, system[i - 1], ancilla)
    return circuit.gate(gs.cxdg, system[i], ancilla)


def add_step1(circuit: Circuit, gs: GateSet, system: Sequence[int], ancilla: int) -> Circuit:
    """임의 위상 제거: [H_d on A] -> C_{X_d}(A -> 모든 시스템) -> C_{X_d}†(시스템 0 -> A)"""
    circuit = circuit.gate(gs.h, ancilla)
    for wire in system:
        circuit = circuit.gate(gs.cx, ancilla, wire)
    return circuit.gate(gs.cxdg, system[0], ancilla)


def add_phase_difference(
    circuit: Circuit, gs: GateSet, system: Sequence[int], ancilla: int, stored_p: int
) -> Circuit:
    """보조 큐디트 |p> 에서 시작해 p - p' 를 기록 (시스템 위상은 p 가 됨)"""
    circuit = add_prepare_digit(circuit, gs, ancilla, stored_p)
    circuit = circuit.gate(gs.hdg, ancilla)
    for wire in system:
        circuit = circuit.gate(gs.cx, ancilla, wire)
    circuit = circuit.gate(gs.cxdg, system[0], ancilla)
    return circuit.gate(gs.h, ancilla)


def add_phase_correction(
    circuit: Circuit, gs: GateSet, system: Sequence[int], ancilla: int, stored_p: int
) -> Circuit:
    """C_{Z_d}(|p> -> 시스템 0): 위상 없는 GBS 에 위상 지수 p 부여"""
    circuit = add_prepare_digit(circuit, gs, ancilla, stored_p)
    return circuit.gate(gs.cz, ancilla, system[0])


def add_parity_correction(
    circuit: Circuit,
    gs: GateSet,
    system: Sequence[int],
    i: int,
    ancilla: int,
    relative_parity: int,
) -> Circuit:
    """와이어 i 의 오프셋을 저장된 q_i 로 교정; 보조 큐디트 최종값 q_i - q'_i

    와이어 i-1 은 이미 교정되어 있어야 한다.
    """
    circuit = add_prepare_digit(circuit, gs, ancilla, relative_parity)
    circuit = circuit.gate(gs.cxdg, system[i - 1], ancilla)
    circuit = circuit.gate(gs.cx, system[i], ancilla)
    return circuit.gate(gs.cxdg, ancilla, system[i])


def phase_check_circuit(d: int, n: int, qubit_form: bool = False) -> Circuit:
    """시스템 0..n-1, 보조 n"""
    gs = GateSet(d, qubit_form)
    return add_phase_check(Circuit(d=d, n=n + 1), gs, range(n), n).measure(n)


def parity_check_circuit(d: int, n: int, qubit_form: bool = False) -> Circuit:
    """시스템 0..n-1, 보조 A_i = n+i-1 (i=1..n-1), 마지막에 모든 보조 측정"""
    gs = GateSet(d, qubit_form)
    system = list(range(n))
    ancillas = [n + i - 1 for i in range(1, n)]
    circuit = Circuit(d=d, n=2 * n - 1)
    for i, anc in zip(range(1, n), ancillas, strict=True):
        circuit = add_parity_check(circuit, gs, system, i, anc)
    return circuit.measure(*ancillas)


def step1_circuit(d: int, n: int, qubit_form: bool = False) -> Circuit:
    gs = GateSet(d, qubit_form)
    return add_step1(Circuit(d=d, n=n + 1), gs, range(n), n)


def phase_difference_circuit(d: int, n: int, stored_p: int) -> Circuit:
    circuit = add_phase_difference(Circuit(d=d, n=n + 1), GateSet(d), range(n), n, stored_p)
    return circuit.measure(n)


def phase_correction_circuit(
    d: int, n: int, stored_p: int, qubit_form: bool = False
) -> Circuit:
    gs = GateSet(d, qubit_form)
    return add_phase_correction(Circuit(d=d, n=n + 1), gs, range(n), n, stored_p)


def parity_correction_circuit(
    d: int, n: int, stored_q: Sequence[int], qubit_form: bool = False
) -> Circuit:
    """시스템 0..n-1, 패리티 보조 n+i-1; 저장된 상대 패리티로 순차 교정"""
    gs = GateSet(d, qubit_form)
    relative = GBSLabel.make(d, n, 0, stored_q).relative_parities()
    system = list(range(n))
    ancillas = [n + i - 1 for i in range(1, n)]
    circuit = Circuit(d=d, n=2 * n - 1)
    for i, anc in zip(range(1, n), ancillas, strict=True):
        circuit = add_parity_correction(circuit, gs, system, i, anc, relative[i - 1])
    return circuit.measure(*ancillas)


def full_register_layout(n: int) -> dict[str, list[int]]:
    """전체 교정 레지스터 배치: 시스템, 위상 제거 보조, 저장 위상 보조, 패리티 보조"""
    return {
        "system": list(range(n)),
        "phase_removal": [n],
        "stored_phase": [n + 1],
        "parity": [n + 1 + i for i in range(1, n)],
    }


def full_register_circuit(stored: GBSLabel, qubit_form: bool = False) -> Circuit:
    """위상 제거 -> 위상 교정 -> 패리티 교정을 한 레지스터에서 실행 (n + 2 + (n-1) 와이어)"""
    d, n = stored.d, stored.n
    gs = GateSet(d, qubit_form)
    layout = full_register_layout(n)
    system = layout["system"]
    circuit = Circuit(d=d, n=2 * n + 1)
    circuit = add_step1(circuit, gs, system, layout["phase_removal"][0])
    circuit = add_phase_correction(circuit, gs, system, layout["stored_phase"][0], stored.p)
    relative = stored.relative_parities()
    for i, anc in zip(range(1, n), layout["parity"], strict=True):
        circuit = add_parity_correction(circuit, gs, system, i, anc, relative[i - 1])
    return circuit.measure(*layout["parity"])
