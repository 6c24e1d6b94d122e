"""
토모그래피 관련 스키마
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from quditlab.core.exceptions import InputError

PauliOp = Literal["I", "X", "Y", "Z"]


class PauliString(BaseModel):
    """와이어별 파울리 연산자 목록 (예: 'XIZ')"""

    model_config = ConfigDict(frozen=True)

    ops: tuple[PauliOp, ...] = Field(..., min_length=1)

    @classmethod
    def parse(cls, text: str) -> PauliString:
        text = text.strip().upper()
        if not text or any(ch not in "IXYZ" for ch in text):
            raise InputError(f"파울리 문자열은 I/X/Y/Z 로만 구성되어야 합니다: {text!r}")
        return cls(ops=tuple(text))

    @property
    def label(self) -> str:
        return "".join(self.ops)

    @property
    def is_identity(self) -> bool:
        return all(op == "I" for op in self.ops)

    def __len__(self) -> int:
        return len(self.ops)


class Metrics(BaseModel):
    """재구성 밀도 행렬 비교 지표

    편차는 복소 모듈러스(기본), 실수부, 허수부 세 가지로 보고한다.
    """

    fidelity_pure: float | None = Field(None, description="sqrt(<Ψ|ρ^E|Ψ>)")
    fidelity_general: float = Field(..., description="Tr sqrt(sqrt(ρ^T) ρ^E sqrt(ρ^T))")
    avg_abs_dev: float = Field(..., ge=0, description="복소 모듈러스 평균 절대 편차")
    max_abs_dev: float = Field(..., ge=0, description="복소 모듈러스 최대 절대 편차")
    avg_abs_dev_real: float = Field(..., ge=0)
    max_abs_dev_real: float = Field(..., ge=0)
    avg_abs_dev_imag: float = Field(..., ge=0)
    max_abs_dev_imag: float = Field(..., ge=0)
    shots: int | None = Field(None, description="설정당 샷 수 (None = exact)")
