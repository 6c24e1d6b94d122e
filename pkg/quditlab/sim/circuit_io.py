"""
회로 텍스트 파일 읽기/쓰기

    # 주석
    REGISTER 2 3
    H 0
    CNOT 0 1
    P 2 0.3927
    MEASURE 0 1

REGISTER 헤더가 먼저 나와야 한다. 2-와이어 게이트는 control, target 순서.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

from quditlab.core.exceptions import CircuitParseError, InputError
from quditlab.schemas.circuit import Circuit, GateStep, MeasureStep
from quditlab.schemas.gate import GateMatrix
from quditlab.sim import gates

logger = logging.getLogger(__name__)

# 이름 -> (arity, d 를 받아 게이트를 만드는 함수)
_QUDIT_GATES: dict[str, tuple[int, Callable[[int], GateMatrix]]] = {
    "ZD": (1, lambda d: gates.gen_Z(d)),
    "ZDG": (1, lambda d: gates.gen_Z(d, adjoint=True)),
    "XD": (1, lambda d: gates.gen_X(d)),
    "XDG": (1, lambda d: gates.gen_X(d, adjoint=True)),
    "HD": (1, lambda d: gates.gen_H(d)),
    "HDG": (1, lambda d: gates.gen_H(d, adjoint=True)),
    "CXD": (2, lambda d: gates.controlled_shift(d)),
    "CXDG": (2, lambda d: gates.controlled_shift(d, adjoint=True)),
    "CZD": (2, lambda d: gates.controlled_Zpow(d)),
}

_QUBIT_ARITY = {"I": 1, "H": 1, "X": 1, "Y": 1, "Z": 1, "S": 1, "SDG": 1, "CNOT": 2, "CZ": 2}

# dump 시 이름 역매핑 (GateMatrix.name -> 텍스트 이름)
_DUMP_NAMES = {"ZD†": "ZDG", "XD†": "XDG", "HD†": "HDG", "CXD†": "CXDG"}


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise CircuitParseError(f"{what} 는 정수여야 합니다: {token!r}", line_no) from e


def _parse_header(tokens: list[str], line_no: int) -> tuple[int, int]:
    if len(tokens) != 3 or tokens[0].upper() != "REGISTER":
        raise CircuitParseError("첫 명령은 'REGISTER d n' 이어야 합니다", line_no)
    d = _parse_int(tokens[1], line_no, "d")
    n = _parse_int(tokens[2], line_no, "n")
    if d < 2 or n < 1:
        raise CircuitParseError(f"잘못된 레지스터 크기 d={d}, n={n}", line_no)
    return d, n


def _parse_gate(name: str, args: list[str], d: int, line_no: int) -> GateStep:
    if name in _QUDIT_GATES:
        arity, build = _QUDIT_GATES[name]
        gate = build(d)
    elif name == "P":
        arity = 1
        if len(args) != 2:
            raise CircuitParseError("P 게이트 형식은 'P wire theta' 입니다", line_no)
        try:
            theta = float(args[1])
        except ValueError as e:
            raise CircuitParseError(f"theta 는 실수여야 합니다: {args[1]!r}", line_no) from e
        if not math.isfinite(theta):
            raise CircuitParseError("theta 가 유한하지 않습니다", line_no)
        args = args[:1]
        gate = None
    elif name in _QUBIT_ARITY:
        arity = _QUBIT_ARITY[name]
        gate = None
    else:
        raise CircuitParseError(f"알 수 없는 게이트: {name}", line_no)

    if gate is None:
        if d != 2:
            raise CircuitParseError(f"{name} 는 큐비트(d=2) 전용 게이트입니다", line_no)
        gate = gates.qubit_gate(name, theta if name == "P" else None)

    if len(args) != arity:
        raise CircuitParseError(f"{name} 는 와이어 {arity} 개가 필요합니다", line_no)
    wires = tuple(_parse_int(a, line_no, "와이어") for a in args)
    return GateStep(gate=gate, wires=wires)


def parse_circuit(text: str) -> Circuit:
    """회로 텍스트를 Circuit 으로 변환

    Raises:
        CircuitParseError: 문법 오류, 알 수 없는 게이트, 잘못된 와이어 (행 번호 포함)
    """
    register: tuple[int, int] | None = None
    circuit: Circuit | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if register is None:
            register = _parse_header(tokens, line_no)
            circuit = Circuit(d=register[0], n=register[1])
            continue

        assert circuit is not None
        name, args = tokens[0].upper(), tokens[1:]
        if name == "REGISTER":
            raise CircuitParseError("REGISTER 헤더가 두 번 나왔습니다", line_no)
        if name == "MEASURE":
            if not args:
                raise CircuitParseError("MEASURE 에 와이어가 없습니다", line_no)
            step: GateStep | MeasureStep = MeasureStep(
                wires=tuple(_parse_int(a, line_no, "와이어") for a in args)
            )
        else:
            step = _parse_gate(name, args, register[0], line_no)

        try:
            circuit = circuit._append(step)
        except InputError as e:
            raise CircuitParseError(str(e), line_no) from e

    if circuit is None:
        raise CircuitParseError("REGISTER 헤더가 없습니다")
    logger.debug(f"회로 파싱 완료: d={circuit.d}, n={circuit.n}, 단계 {len(circuit.steps)}")
    return circuit


def _dump_name(gate: GateMatrix) -> str:
    name = _DUMP_NAMES.get(gate.name, gate.name)
    if name in _QUDIT_GATES or name in _QUBIT_ARITY:
        return name
    if name.startswith("P("):
        return "P"
    raise InputError(f"텍스트로 쓸 수 없는 게이트: {gate.name}")


def dump_circuit(circuit: Circuit) -> str:
    """Circuit 을 텍스트 형식으로 직렬화 (라이브러리 게이트만 지원)"""
    lines = [f"REGISTER {circuit.d} {circuit.n}"]
    for step in circuit.steps:
        wires = " ".join(str(w) for w in step.wires)
        if isinstance(step, MeasureStep):
            lines.append(f"MEASURE {wires}")
            continue
        name = _dump_name(step.gate)
        if name == "P":
            theta = math.atan2(step.gate.matrix[1, 1].imag, step.gate.matrix[1, 1].real)
            lines.append(f"P {wires} {theta!r}")
        else:
            lines.append(f"{name} {wires}")
    return "\n".join(lines) + "\n"
