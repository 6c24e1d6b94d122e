"""
게이트 행렬 스키마
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

UNITARY_TOL = 1e-10


class GateMatrix(BaseModel):
    """d^arity x d^arity 유니터리 행렬

    2-와이어 게이트는 (control ⊗ target) 순서로 만든다.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = Field(..., min_length=1)
    d: int = Field(..., ge=2)
    arity: int = Field(..., ge=1, le=2)
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def as_complex_matrix(cls, v):
        arr = np.array(v, dtype=complex, copy=True)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def check_unitary(self) -> GateMatrix:
        """모양과 유니터리성 검증"""
        size = self.d**self.arity
        if self.matrix.shape != (size, size):
            raise ValueError(f"게이트 행렬 모양 {self.matrix.shape} != ({size}, {size})")
        if not np.allclose(self.matrix @ self.matrix.conj().T, np.eye(size), atol=UNITARY_TOL):
            raise ValueError(f"{self.name}: 유니터리 행렬이 아닙니다")
        return self

    def adjoint(self) -> GateMatrix:
        """에르미트 수반 게이트"""
        name = self.name[:-1] if self.name.endswith("†") else f"{self.name}†"
        return GateMatrix(name=name, d=self.d, arity=self.arity, matrix=self.matrix.conj().T)

    def power(self, k: int) -> GateMatrix:
        """k 제곱 (k >= 0)"""
        return GateMatrix(
            name=f"{self.name}^{k}",
            d=self.d,
            arity=self.arity,
            matrix=np.linalg.matrix_power(np.array(self.matrix), k),
        )
