"""
d^n 차원 레지스터용 복소 밀집 선형대수

상태 벡터 생성, 텐서곱, 밀도 행렬, 부분 대각합, 슈미트 분해.
와이어 0 이 기저 d 표기의 최상위 자릿수이다.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from string import ascii_letters

import numpy as np

from quditlab.core.exceptions import (
    DimensionMismatch,
    InvalidDimension,
    InvalidWires,
    LengthMismatch,
    NotFactorizable,
    NotNormalized,
)
from quditlab.schemas.circuit import check_wires
from quditlab.schemas.state import NORM_TOL, DensityMatrix, StateVector

logger = logging.getLogger(__name__)


def make_state(
    d: int, n: int, amplitudes: Sequence[complex] | np.ndarray, renormalize: bool = False
) -> StateVector:
    """진폭 목록으로 상태 벡터 생성

    Args:
        d: 와이어당 차원
        n: 와이어 수
        amplitudes: 길이 d^n 복소 진폭
        renormalize: True 이면 노름을 1 로 맞춤

    Raises:
        LengthMismatch: 길이가 d^n 이 아님
        NotNormalized: 노름이 1 에서 1e-6 이상 벗어남 (renormalize=False)
    """
    if d < 2:
        raise InvalidDimension(f"d={d} < 2")
    if n < 1:
        raise InvalidWires(f"와이어 수 n={n} < 1")
    arr = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if arr.shape[0] != d**n:
        raise LengthMismatch(f"진폭 길이 {arr.shape[0]} != d^n = {d**n}")
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise NotNormalized("영 벡터는 정규화할 수 없습니다")
    if not renormalize and abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"노름 {norm:.6f} 가 1 이 아닙니다 (renormalize 옵션 사용)")
    # 허용 오차 안의 입력도 노름 1 로 맞춤
    arr = arr / norm
    return StateVector(dim_per_wire=d, wire_count=n, amplitudes=arr)


def basis_state(d: int, digits: Sequence[int]) -> StateVector:
    """계산 기저 상태 |digits>"""
    shape = (d,) * len(digits)
    if any(not 0 <= x < d for x in digits):
        raise InvalidWires(f"기저 숫자 {list(digits)} 가 [0, {d}) 밖입니다")
    arr = np.zeros(d ** len(digits), dtype=complex)
    arr[np.ravel_multi_index(tuple(digits), shape)] = 1.0
    return StateVector(dim_per_wire=d, wire_count=len(digits), amplitudes=arr)


def zero_state(d: int, n: int) -> StateVector:
    return basis_state(d, [0] * n)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """a ⊗ b (a 의 와이어가 앞쪽)"""
    if a.dim_per_wire != b.dim_per_wire:
        raise DimensionMismatch(f"d 불일치: {a.dim_per_wire} vs {b.dim_per_wire}")
    return StateVector(
        dim_per_wire=a.dim_per_wire,
        wire_count=a.wire_count + b.wire_count,
        amplitudes=np.kron(a.amplitudes, b.amplitudes),
    )


def tensor_all(*states: StateVector) -> StateVector:
    result = states[0]
    for s in states[1:]:
        result = tensor(result, s)
    return result


def density_of(state: StateVector) -> DensityMatrix:
    """ρ = |ψ><ψ|"""
    a = state.amplitudes
    return DensityMatrix(dim=a.shape[0], entries=np.outer(a, a.conj()))


def partial_trace(rho: DensityMatrix, keep: Sequence[int], d: int, n: int) -> DensityMatrix:
    """keep 에 없는 와이어를 대각합으로 제거

    결과 행렬의 와이어 순서는 keep 에 주어진 순서를 따른다.
    """
    keep = check_wires(keep, n)
    if rho.dim != d**n:
        raise DimensionMismatch(f"밀도 행렬 차원 {rho.dim} != d^n = {d**n}")
    if 2 * n > len(ascii_letters):
        raise InvalidWires(f"와이어 수 {n} 는 부분 대각합 지원 범위를 넘습니다")
    rows = list(ascii_letters[:n])
    cols = list(ascii_letters[n : 2 * n])
    for w in range(n):
        if w not in keep:
            cols[w] = rows[w]
    out = "".join(rows[w] for w in keep) + "".join(cols[w] for w in keep)
    tensor_rho = np.asarray(rho.entries).reshape((d,) * (2 * n))
    reduced = np.einsum(f"{''.join(rows)}{''.join(cols)}->{out}", tensor_rho)
    size = d ** len(keep)
    return DensityMatrix(dim=size, entries=reduced.reshape(size, size))


def overlap(a: StateVector, b: StateVector) -> complex:
    """<a|b>"""
    if a.dim != b.dim or a.dim_per_wire != b.dim_per_wire:
        raise DimensionMismatch("크기가 다른 상태는 비교할 수 없습니다")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>| (전역 위상 무시)"""
    return abs(overlap(a, b))


def same_state(a: StateVector, b: StateVector, tol: float = 1e-10) -> bool:
    """전역 위상을 제외하고 같은 상태인지"""
    return fidelity(a, b) >= 1.0 - tol


def _fix_phase(vec: np.ndarray, tol: float = 1e-9) -> complex:
    """첫 번째 유효 진폭을 양의 실수로 만드는 위상"""
    for x in vec:
        if abs(x) > tol:
            return x / abs(x)
    return 1.0 + 0j


def factorize(
    state: StateVector, keep: Sequence[int], tol: float = 1e-8
) -> tuple[StateVector, StateVector, float]:
    """레지스터를 (keep 와이어, 나머지 와이어) 곱 상태로 분해

    keep 쪽 첫 유효 진폭을 양의 실수로 고정하고 전역 위상은 나머지 쪽에 싣는다.

    Returns:
        (keep 부분 상태, 나머지 부분 상태, 최대 슈미트 계수)

    Raises:
        NotFactorizable: 최대 슈미트 계수 < 1 - tol
    """
    d, n = state.dim_per_wire, state.wire_count
    keep = check_wires(keep, n)
    rest = [w for w in range(n) if w not in keep]
    if not rest:
        raise InvalidWires("분해할 나머지 와이어가 없습니다")
    psi = np.transpose(state.as_tensor(), list(keep) + rest)
    matrix = psi.reshape(d ** len(keep), d ** len(rest))
    u, s, vh = np.linalg.svd(matrix)
    schmidt = float(s[0])
    if schmidt < 1.0 - tol:
        logger.debug(f"슈미트 분해 실패: s0={schmidt:.3e}, 계수={s[:3]}")
        raise NotFactorizable(
            f"곱 상태가 아닙니다 (최대 슈미트 계수 {schmidt:.3e})", schmidt=schmidt
        )
    left = u[:, 0]
    right = vh[0, :] * s[0]
    phase = _fix_phase(left)
    left = left / phase
    right = right * phase
    right = right / np.linalg.norm(right)
    return (
        StateVector(dim_per_wire=d, wire_count=len(keep), amplitudes=left),
        StateVector(dim_per_wire=d, wire_count=len(rest), amplitudes=right),
        schmidt,
    )


def project_out(state: StateVector, wires: Sequence[int], digits: Sequence[int]) -> StateVector:
    """wires 를 digits 로 사영한 뒤 해당 와이어를 제거하고 재정규화"""
    d, n = state.dim_per_wire, state.wire_count
    wires = check_wires(wires, n)
    if len(digits) != len(wires):
        raise InvalidWires("사영할 숫자 개수가 와이어 수와 다릅니다")
    rest = [w for w in range(n) if w not in wires]
    if not rest:
        raise InvalidWires("남는 와이어가 없습니다")
    index: list[int | slice] = [slice(None)] * n
    for w, x in zip(wires, digits, strict=True):
        index[w] = int(x)
    branch = state.as_tensor()[tuple(index)].reshape(-1)
    norm = float(np.linalg.norm(branch))
    if norm == 0.0:
        raise InvalidWires(f"확률 0 인 결과 {list(digits)} 로 사영할 수 없습니다")
    return StateVector(dim_per_wire=d, wire_count=len(rest), amplitudes=branch / norm)
