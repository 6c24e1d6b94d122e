"""
상태 벡터 / 밀도 행렬 스키마
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# 사용자 입력 검증용 노름 허용 오차
NORM_TOL = 1e-6


def _frozen_array(value, dtype=complex) -> np.ndarray:
    arr = np.array(value, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


class VectorPayload(BaseModel):
    """복소 벡터 JSON 표현"""

    re: list[float]
    im: list[float]


class MatrixPayload(BaseModel):
    """복소 행렬 JSON 표현 (row-major)"""

    dim: int = Field(..., ge=1)
    re: list[list[float]]
    im: list[list[float]]


class StateVector(BaseModel):
    """d 차원 와이어 n 개로 이루어진 레지스터의 순수 상태

    와이어 0 이 기저 d 표기에서 최상위 자릿수이다.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dim_per_wire: int = Field(..., ge=2)
    wire_count: int = Field(..., ge=1)
    amplitudes: np.ndarray

    @field_validator("amplitudes", mode="before")
    @classmethod
    def as_complex_vector(cls, v):
        """복소 1차원 배열로 변환 (읽기 전용)"""
        return _frozen_array(np.asarray(v, dtype=complex).reshape(-1))

    @model_validator(mode="after")
    def check_shape_and_norm(self) -> StateVector:
        """길이 d^n, 노름 1 검증"""
        expected = self.dim_per_wire**self.wire_count
        if self.amplitudes.shape[0] != expected:
            raise ValueError(f"진폭 길이 {self.amplitudes.shape[0]} != d^n = {expected}")
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"정규화되지 않은 상태 (norm={self.norm():.3e})")
        return self

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def shape(self) -> tuple[int, ...]:
        """와이어별 텐서 모양"""
        return (self.dim_per_wire,) * self.wire_count

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def as_tensor(self) -> np.ndarray:
        """(d, d, ..., d) 텐서 사본"""
        return np.array(self.amplitudes).reshape(self.shape)

    def to_payload(self) -> VectorPayload:
        return VectorPayload(
            re=[float(x) for x in self.amplitudes.real],
            im=[float(x) for x in self.amplitudes.imag],
        )

    def ket_string(self, index: int) -> str:
        """기저 인덱스를 ket 문자열로 변환 (예: 2 -> '010')"""
        digits = np.unravel_index(index, self.shape)
        sep = "" if self.dim_per_wire <= 10 else ","
        return sep.join(str(int(x)) for x in digits)

    def support(self, tol: float = 1e-12) -> dict[str, complex]:
        """0 이 아닌 진폭만 ket 문자열로 모아 반환"""
        return {
            self.ket_string(int(k)): complex(self.amplitudes[k])
            for k in np.flatnonzero(np.abs(self.amplitudes) > tol)
        }


class DensityMatrix(BaseModel):
    """밀도 행렬

    이론 행렬은 순수 상태로부터 만들어지고, 재구성(실험) 행렬은 유한 샷 오차를
    그대로 보존한다 (양정치성 보정 없음).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dim: int = Field(..., ge=1)
    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def as_complex_matrix(cls, v):
        """복소 2차원 배열로 변환 (읽기 전용)"""
        return _frozen_array(np.asarray(v, dtype=complex))

    @model_validator(mode="after")
    def check_shape(self) -> DensityMatrix:
        """dim x dim 모양 검증"""
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(f"행렬 모양 {self.entries.shape} != ({self.dim}, {self.dim})")
        return self

    @classmethod
    def from_array(cls, entries) -> DensityMatrix:
        arr = np.asarray(entries, dtype=complex)
        return cls(dim=arr.shape[0], entries=arr)

    @classmethod
    def from_payload(cls, payload: MatrixPayload | dict) -> DensityMatrix:
        """JSON 표현 {"dim", "re", "im"} 에서 생성"""
        if isinstance(payload, dict):
            payload = MatrixPayload.model_validate(payload)
        arr = np.asarray(payload.re, dtype=float) + 1j * np.asarray(payload.im, dtype=float)
        return cls(dim=payload.dim, entries=arr)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def purity(self) -> float:
        """trace(rho^2) 실수부"""
        return float(np.trace(self.entries @ self.entries).real)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, atol=tol))

    def to_payload(self) -> MatrixPayload:
        return MatrixPayload(
            dim=self.dim,
            re=[[float(x) for x in row] for row in self.entries.real],
            im=[[float(x) for x in row] for row in self.entries.imag],
        )
