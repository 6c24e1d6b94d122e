"""
HTTP 요청 스키마
"""

from typing import Literal

from pydantic import BaseModel, Field

from quditlab.schemas.correction import ErrorSpec


class DiscriminateRequest(BaseModel):
    """판별 요청"""

    label: str = Field(..., description="d:n:p:q1,... 형식 GBS 라벨", examples=["2:3:1:1,0"])
    shots: int | None = Field(None, ge=1, description="미지정 시 기본 샷 수")
    seed: int | None = Field(None, ge=0)
    exact: bool = False


class CorrectRequest(BaseModel):
    """자동 교정 요청"""

    label: str = Field(..., examples=["2:2:1:1"])
    error: ErrorSpec | None = Field(None, description="미지정 시 오류 없음")
    steps: Literal[1, 2, 3] = 3
    phase_difference: bool = False
    dump_states: bool = False


class TomographyRequest(BaseModel):
    """토모그래피 요청 (label 또는 circuit 중 하나)"""

    label: str | None = None
    circuit: str | None = Field(None, description="회로 텍스트 (REGISTER d n ...)")
    wires: list[int] | None = Field(None, description="미지정 시 전체 와이어")
    shots: int | None = Field(None, ge=1)
    seed: int | None = Field(None, ge=0)
    exact: bool = False


class PresetRequest(BaseModel):
    """프리셋 실행 옵션"""

    shots: int | None = Field(None, ge=1)
    seed: int | None = Field(None, ge=0)


class PresetInfo(BaseModel):
    """프리셋 목록 항목"""

    name: str
    description: str
