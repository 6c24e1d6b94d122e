"""
실험 관련 API 엔드포인트
"""

import logging

from fastapi import APIRouter

from quditlab.core.container import get_settings
from quditlab.core.dependencies import (
    CorrectionServiceDep,
    DiscriminationServiceDep,
    ExperimentServiceDep,
    TomographyServiceDep,
)
from quditlab.schemas.correction import ErrorSpec
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import (
    CorrectionReport,
    DiscriminationReport,
    PresetReport,
    TomographyReport,
)
from quditlab.schemas.requests import (
    CorrectRequest,
    DiscriminateRequest,
    PresetInfo,
    PresetRequest,
    TomographyRequest,
)
from quditlab.sim.entangled import gbs

logger = logging.getLogger(__name__)

router = APIRouter()


def _seed(seed: int | None) -> int:
    return get_settings().default_seed if seed is None else seed


@router.post("/api/v1/discriminate", response_model=DiscriminationReport)
def discriminate(
    request: DiscriminateRequest, service: DiscriminationServiceDep
) -> DiscriminationReport:
    """GBS 상태 판별"""
    label = GBSLabel.parse(request.label)
    shots = service.resolve_shots(request.shots, request.exact)
    return service.report(label, gbs(label), shots, _seed(request.seed))


@router.post("/api/v1/correct", response_model=CorrectionReport)
def correct(request: CorrectRequest, service: CorrectionServiceDep) -> CorrectionReport:
    """오류 주입 후 자동 교정"""
    label = GBSLabel.parse(request.label)
    err = request.error or ErrorSpec.none_for(label)
    result = service.run_pipeline(label, err, request.steps, request.phase_difference)
    return service.report(label, err, result, request.dump_states)


@router.post("/api/v1/tomography", response_model=TomographyReport)
def tomography(request: TomographyRequest, service: TomographyServiceDep) -> TomographyReport:
    """밀도 행렬 재구성과 비교 지표"""
    target, state = service.target_state(request.label, request.circuit)
    wires = request.wires if request.wires is not None else list(range(state.wire_count))
    shots = service.resolve_shots(request.shots, request.exact)
    return service.tomograph(target, state, wires, shots, _seed(request.seed))


@router.get("/api/v1/presets", response_model=list[PresetInfo])
def list_presets(service: ExperimentServiceDep) -> list[PresetInfo]:
    """프리셋 목록"""
    return [
        PresetInfo(name=name, description=service.describe(name))
        for name in service.preset_names()
    ]


@router.post("/api/v1/presets/{name}", response_model=PresetReport)
def run_preset(
    name: str, service: ExperimentServiceDep, request: PresetRequest | None = None
) -> PresetReport:
    """프리셋 실행 (기대 결과 불일치는 passed=false 로 반환)"""
    request = request or PresetRequest()
    return service.run_preset(name, request.shots, request.seed)
