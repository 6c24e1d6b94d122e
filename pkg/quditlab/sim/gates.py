"""
게이트 라이브러리

큐비트 게이트(H, X, Y, Z, S, S†, P(θ), CNOT, CZ)와 일반화 큐디트 게이트
Z_d, X_d, H_d, C_{X_d}, C_{Z_d} 거듭제곱. 2-와이어 게이트는 (control ⊗ target) 순서.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from quditlab.core.exceptions import InvalidDimension, UnknownGate
from quditlab.schemas.gate import GateMatrix

_SQRT2_INV = 1 / np.sqrt(2)

_QUBIT_FIXED = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}

QUBIT_GATES = (*_QUBIT_FIXED, "P")


def qubit_gate(name: str, theta: float | None = None) -> GateMatrix:
    """큐비트 게이트 행렬

    P(θ) = diag(1, e^{iθ}). π/8 위상 게이트는 P(π/8) 이며 T 게이트(e^{iπ/4})가 아니다.
    """
    key = name.strip().upper()
    if key == "SDAG":
        key = "SDG"
    if key == "P":
        if theta is None:
            raise UnknownGate("P 게이트에는 theta 가 필요합니다")
        return GateMatrix(
            name=f"P({theta:g})", d=2, arity=1, matrix=np.diag([1.0, np.exp(1j * theta)])
        )
    if key not in _QUBIT_FIXED:
        raise UnknownGate(f"알 수 없는 큐비트 게이트: {name!r}")
    matrix = _QUBIT_FIXED[key]
    return GateMatrix(name=key, d=2, arity=int(np.log2(matrix.shape[0])), matrix=matrix)


def _check_d(d: int) -> None:
    if d < 2:
        raise InvalidDimension(f"d={d} < 2")


def _omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


@lru_cache(maxsize=64)
def gen_Z(d: int, adjoint: bool = False) -> GateMatrix:
    """Z_d|j> = e^{2πij/d}|j>"""
    _check_d(d)
    phases = _omega(d) ** np.arange(d)
    gate = GateMatrix(name="ZD", d=d, arity=1, matrix=np.diag(phases))
    return gate.adjoint() if adjoint else gate


@lru_cache(maxsize=64)
def gen_X(d: int, adjoint: bool = False) -> GateMatrix:
    """X_d|j> = |j-1 mod d>, X_d†|j> = |j+1 mod d>"""
    _check_d(d)
    matrix = np.zeros((d, d), dtype=complex)
    for j in range(d):
        matrix[(j - 1) % d, j] = 1.0
    gate = GateMatrix(name="XD", d=d, arity=1, matrix=matrix)
    return gate.adjoint() if adjoint else gate


@lru_cache(maxsize=64)
def gen_H(d: int, adjoint: bool = False) -> GateMatrix:
    """H_d|j> = (1/√d) Σ_k e^{2πijk/d}|k>"""
    _check_d(d)
    jk = np.outer(np.arange(d), np.arange(d))
    matrix = _omega(d) ** jk / np.sqrt(d)
    gate = GateMatrix(name="HD", d=d, arity=1, matrix=matrix)
    return gate.adjoint() if adjoint else gate


@lru_cache(maxsize=64)
def controlled_shift(d: int, adjoint: bool = False) -> GateMatrix:
    """C_{X_d}|i>|j> = |i>|j-i mod d> (adjoint: |i>|j+i mod d>)"""
    _check_d(d)
    sign = 1 if adjoint else -1
    matrix = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            matrix[i * d + (j + sign * i) % d, i * d + j] = 1.0
    return GateMatrix(name="CXD†" if adjoint else "CXD", d=d, arity=2, matrix=matrix)


@lru_cache(maxsize=64)
def controlled_Zpow(d: int) -> GateMatrix:
    """|k>|j> -> e^{2πijk/d}|k>|j> (제어값 k 만큼 Z_d^k)"""
    _check_d(d)
    k, j = np.divmod(np.arange(d * d), d)
    return GateMatrix(name="CZD", d=d, arity=2, matrix=np.diag(_omega(d) ** (k * j)))


def branch_phase(deltas) -> GateMatrix:
    """|j> -> e^{iδ_j}|j> 대각 게이트 (d = len(deltas))"""
    deltas = np.asarray(deltas, dtype=float)
    _check_d(len(deltas))
    return GateMatrix(name="PHASE", d=len(deltas), arity=1, matrix=np.diag(np.exp(1j * deltas)))
