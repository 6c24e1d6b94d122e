"""
오류 주입 / 자동 교정 스키마
"""

from __future__ import annotations

import json
import math

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from quditlab.core.exceptions import InputError
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.state import StateVector


class ErrorSpec(BaseModel):
    """주입할 결맞은 오류

    deltas 는 가지 j 마다 붙는 임의 위상 δ_j (라디안), 길이가 d 를 정한다.
    """

    model_config = ConfigDict(frozen=True)

    deltas: tuple[float, ...] = Field(..., min_length=2)
    p_err: int = 0
    q_err: tuple[int, ...] = ()

    @model_validator(mode="after")
    def check_indices(self) -> ErrorSpec:
        """p', q' 가 [0, d) 안에 있는지 검증"""
        d = len(self.deltas)
        if not all(math.isfinite(x) for x in self.deltas):
            raise ValueError("deltas 에 유한하지 않은 값이 있습니다")
        if not 0 <= self.p_err < d:
            raise ValueError(f"p_err={self.p_err} 는 [0, {d}) 밖입니다")
        bad = [x for x in self.q_err if not 0 <= x < d]
        if bad:
            raise ValueError(f"q_err {bad} 는 [0, {d}) 밖입니다")
        return self

    @property
    def d(self) -> int:
        return len(self.deltas)

    @classmethod
    def from_json(cls, text: str) -> ErrorSpec:
        """{"deltas": [...], "p_err": k, "q_err": [...]} 파싱"""
        try:
            return cls.model_validate(json.loads(text))
        except (json.JSONDecodeError, ValidationError) as e:
            raise InputError(f"ErrorSpec JSON 오류: {e}") from e

    @classmethod
    def none_for(cls, label: GBSLabel) -> ErrorSpec:
        """오류 없음 (δ=0, p'=p, q'=q)"""
        return cls(deltas=(0.0,) * label.d, p_err=label.p, q_err=label.q)


class CorrectionRecord(BaseModel):
    """자동 교정 진단 기록"""

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=2)
    step1_ancilla: StateVector | None = None
    phase_ancilla: int | None = None  # 준비된 |p> 값
    phase_diff: int | None = None  # p - p' mod d (요청 시)
    parity_diag: tuple[int, ...] = ()  # q_i - q'_i mod d

    @model_validator(mode="after")
    def check_digits(self) -> CorrectionRecord:
        digits = [x for x in (self.phase_ancilla, self.phase_diff) if x is not None]
        digits += list(self.parity_diag)
        bad = [x for x in digits if not 0 <= x < self.d]
        if bad:
            raise ValueError(f"기록 값 {bad} 는 [0, {self.d}) 밖입니다")
        return self

    def parity_string(self) -> str:
        """패리티 진단 숫자열 (예: '10')"""
        sep = "" if self.d <= 10 else ","
        return sep.join(str(x) for x in self.parity_diag)
