"""
파울리 기저 상태 토모그래피 (큐비트 전용)

ρ^E = (1/2^n) Σ_P <P> P  (4^n 개 파울리 문자열, 선형 역변환만 사용)
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from itertools import product

import numpy as np

from quditlab.core.exceptions import DimensionMismatch, InvalidWires, UnsupportedDimension
from quditlab.schemas.circuit import check_wires
from quditlab.schemas.state import DensityMatrix, StateVector
from quditlab.schemas.tomography import Metrics, PauliString
from quditlab.sim.engine import apply, derive_seed, sample
from quditlab.sim.gates import qubit_gate

logger = logging.getLogger(__name__)

PAULI_MATRICES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# 측정 전 기저 회전 (적용 순서대로)
BASIS_ROTATIONS: dict[str, tuple[str, ...]] = {
    "I": (),
    "Z": (),
    "X": ("H",),
    "Y": ("SDG", "H"),
}


def pauli_strings(n: int) -> list[PauliString]:
    """'I...I' 부터 'Z...Z' 까지 4^n 개 문자열"""
    return [PauliString(ops=ops) for ops in product("IXYZ", repeat=n)]


def pauli_matrix(pauli: PauliString) -> np.ndarray:
    return reduce(np.kron, (PAULI_MATRICES[op] for op in pauli.ops))


def _check_qubits(state: StateVector, pauli: PauliString, wires: Sequence[int]) -> tuple[int, ...]:
    if state.dim_per_wire != 2:
        raise UnsupportedDimension(f"토모그래피는 d=2 전용입니다 (d={state.dim_per_wire})")
    wires = check_wires(wires, state.wire_count)
    if len(wires) != len(pauli):
        raise InvalidWires(f"파울리 길이 {len(pauli)} != 와이어 수 {len(wires)}")
    return wires


def expectation(
    state: StateVector,
    pauli: PauliString,
    wires: Sequence[int],
    shots: int | None = None,
    seed: int = 0,
) -> float:
    """<P> 추정

    shots=None 이면 <Ψ|P|Ψ> 를 직접 계산하고, 아니면 기저 회전 후 계산 기저에서
    샘플링해 (-1)^{비항등 와이어 패리티} 의 평균을 돌려준다.
    """
    wires = _check_qubits(state, pauli, wires)
    if pauli.is_identity:
        return 1.0
    if shots is None:
        rotated = state
        for op, w in zip(pauli.ops, wires, strict=True):
            if op != "I":
                rotated = apply(rotated, qubit_gate(op), [w])
        return float(np.vdot(state.amplitudes, rotated.amplitudes).real)

    rotated = state
    active = []
    for op, w in zip(pauli.ops, wires, strict=True):
        if op == "I":
            continue
        active.append(w)
        for name in BASIS_ROTATIONS[op]:
            rotated = apply(rotated, qubit_gate(name), [w])
    result = sample(rotated, active, shots, seed)
    total = 0
    for key, count in result.counts.items():
        parity = key.count("1") % 2
        total += -count if parity else count
    return total / shots


def reconstruct(
    state: StateVector,
    wires: Sequence[int],
    shots: int | None = None,
    seed: int = 0,
    workers: int = 4,
    max_wires: int = 3,
) -> DensityMatrix:
    """선형 역변환으로 ρ^E 재구성

    문자열 k 는 derive_seed(seed, k) 로 따로 샘플링하므로 설정마다 shots 를 새로 쓴다.
    """
    n = len(wires)
    if n > max_wires:
        raise InvalidWires(f"토모그래피 와이어 수 {n} > 최대 {max_wires}")
    strings = pauli_strings(n)
    # 검증은 첫 문자열로 한 번만
    _check_qubits(state, strings[0], wires)

    def estimate(item: tuple[int, PauliString]) -> float:
        index, pauli = item
        return expectation(state, pauli, wires, shots, derive_seed(seed, index))

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        values = list(pool.map(estimate, enumerate(strings)))

    rho = np.zeros((2**n, 2**n), dtype=complex)
    for value, pauli in zip(values, strings, strict=True):
        rho += value * pauli_matrix(pauli)
    rho /= 2**n
    logger.debug(f"토모그래피 재구성 완료: wires={list(wires)}, shots={shots}")
    return DensityMatrix(dim=2**n, entries=rho)


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    herm = (matrix + matrix.conj().T) / 2
    vals, vecs = np.linalg.eigh(herm)
    return (vecs * np.sqrt(np.clip(vals, 0, None))) @ vecs.conj().T


def metrics(
    rho_t: DensityMatrix,
    rho_e: DensityMatrix,
    pure_ref: StateVector | None = None,
    shots: int | None = None,
) -> Metrics:
    """이론/재구성 밀도 행렬 비교 지표"""
    if rho_t.dim != rho_e.dim:
        raise DimensionMismatch(f"밀도 행렬 차원 불일치: {rho_t.dim} vs {rho_e.dim}")
    t = np.asarray(rho_t.entries)
    e = np.asarray(rho_e.entries)

    fidelity_pure = None
    if pure_ref is not None:
        if pure_ref.dim != rho_e.dim:
            raise DimensionMismatch(f"기준 상태 차원 {pure_ref.dim} != {rho_e.dim}")
        psi = pure_ref.amplitudes
        fidelity_pure = float(np.sqrt(max(np.vdot(psi, e @ psi).real, 0.0)))

    root = _psd_sqrt(t)
    inner = root @ e @ root
    inner = (inner + inner.conj().T) / 2
    fidelity_general = float(np.sum(np.sqrt(np.clip(np.linalg.eigvalsh(inner), 0, None))))

    diff = t - e
    modulus, real, imag = np.abs(diff), np.abs(diff.real), np.abs(diff.imag)
    return Metrics(
        fidelity_pure=fidelity_pure,
        fidelity_general=fidelity_general,
        avg_abs_dev=float(modulus.mean()),
        max_abs_dev=float(modulus.max()),
        avg_abs_dev_real=float(real.mean()),
        max_abs_dev_real=float(real.max()),
        avg_abs_dev_imag=float(imag.mean()),
        max_abs_dev_imag=float(imag.max()),
        shots=shots,
    )
