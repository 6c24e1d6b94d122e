"""
서비스 결과 / 응답 모델들

CLI --json 출력과 HTTP 응답이 같은 모델을 쓴다.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from quditlab.schemas.circuit import CheckOutcome
from quditlab.schemas.correction import CorrectionRecord, ErrorSpec
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.state import MatrixPayload, StateVector, VectorPayload
from quditlab.schemas.tomography import Metrics


class CheckReport(BaseModel):
    """보조 큐디트 측정 요약"""

    wires: list[int] = Field(..., description="측정한 보조 와이어")
    distribution: dict[str, float] = Field(..., description="정확한 결과 확률")
    counts: dict[str, int] | None = Field(None, description="샘플 히스토그램")
    outcome: str = Field(..., description="최빈 결과")
    share: float = Field(..., ge=0, le=1, description="최빈 결과 비율")

    @classmethod
    def from_outcome(cls, check: CheckOutcome) -> CheckReport:
        return cls(
            wires=list(check.wires),
            distribution=dict(sorted(check.distribution.items())),
            counts=check.sampled.counts if check.sampled is not None else None,
            outcome=check.outcome,
            share=check.share,
        )


class Discrimination(BaseModel):
    """판별 결과 (내부용)"""

    model_config = ConfigDict(frozen=True)

    label: GBSLabel
    post_state: StateVector
    phase: CheckOutcome
    parity: tuple[CheckOutcome, ...] = ()


class DiscriminationReport(BaseModel):
    """판별 보고서"""

    target: str = Field(..., description="입력 라벨 문자열")
    inferred: str = Field(..., description="판별된 라벨")
    ket_name: str = Field(..., description="첫 가지 ket 이름 (예: Ψ-_010)")
    correct: bool = Field(..., description="입력 라벨과 일치 여부")
    phase: CheckReport
    parity: list[CheckReport] = Field(default_factory=list)
    post_state_fidelity: float = Field(..., description="입력 대비 판별 후 시스템 충실도")
    shots: int | None = Field(None, description="None = exact")
    seed: int


class StepResult(BaseModel):
    """교정 1단계 결과 (내부용)"""

    model_config = ConfigDict(frozen=True)

    system: StateVector
    ancilla: StateVector


class PipelineResult(BaseModel):
    """교정 파이프라인 결과 (내부용)"""

    model_config = ConfigDict(frozen=True)

    stages: dict[str, StateVector] = Field(..., description="단계 이름 -> 시스템 상태")
    final_state: StateVector
    record: CorrectionRecord
    fidelity: float
    steps_run: tuple[int, ...]


class FullRegisterResult(BaseModel):
    """단일 레지스터 교정 결과 (내부용)"""

    model_config = ConfigDict(frozen=True)

    final_state: StateVector
    parity: CheckOutcome
    step1_ancilla: StateVector
    fidelity: float


class CorrectionReport(BaseModel):
    """자동 교정 보고서"""

    target: str
    error: ErrorSpec
    steps_run: list[int]
    final_state: dict[str, list[float]] = Field(..., description="0 이 아닌 진폭 ket -> [re, im]")
    fidelity: float
    passed: bool = Field(..., description="fidelity >= 1 - tol")
    step1_ancilla: VectorPayload | None = None
    phase_ancilla: int | None = None
    phase_diff: int | None = None
    parity_diag: str = ""
    states: dict[str, VectorPayload] | None = Field(None, description="--dump-states 단계별 상태")


class ParityTableCell(BaseModel):
    """GHZ 패리티 진단 표의 한 칸"""

    state: str = Field(..., description="오류 상태 첫 가지 ket (예: 010)")
    check_result: str = Field(..., description="해당 상태의 패리티 검사 결과")
    initial_parity: str = Field(..., description="저장된 상대 패리티")
    final_parity: str = Field(..., description="교정 후 패리티 보조 큐비트")


class TomographyReport(BaseModel):
    """토모그래피 보고서"""

    target: str
    wires: list[int]
    exact: bool
    shots: int | None = None
    seed: int
    rho_e: MatrixPayload
    rho_t: MatrixPayload
    metrics: Metrics


class QuditVerifyReport(BaseModel):
    """큐디트 왕복 검증 보고서"""

    d: int
    n: int
    mode: Literal["random", "exhaustive"]
    trials: int
    passed: int
    failed: int
    min_fidelity: float
    seed: int
    failures: list[str] = Field(default_factory=list, description="실패한 (라벨, 오류) 요약")


class PresetReport(BaseModel):
    """프리셋 실험 보고서"""

    name: str
    description: str
    passed: bool
    expected: dict[str, Any]
    observed: dict[str, Any]
