"""
FastAPI 의존성 주입 헬퍼
"""

from typing import Annotated

from dependency_injector.wiring import Provide, inject
from fastapi import Depends

from quditlab.core.container import Container
from quditlab.services.correction_service import CorrectionService
from quditlab.services.discrimination_service import DiscriminationService
from quditlab.services.experiment_service import ExperimentService
from quditlab.services.tomography_service import TomographyService


@inject
def get_discrimination_service(
    service: DiscriminationService = Depends(Provide[Container.discrimination_service]),
) -> DiscriminationService:
    """판별 서비스 의존성"""
    return service


@inject
def get_correction_service(
    service: CorrectionService = Depends(Provide[Container.correction_service]),
) -> CorrectionService:
    """교정 서비스 의존성"""
    return service


@inject
def get_tomography_service(
    service: TomographyService = Depends(Provide[Container.tomography_service]),
) -> TomographyService:
    """토모그래피 서비스 의존성"""
    return service


@inject
def get_experiment_service(
    service: ExperimentService = Depends(Provide[Container.experiment_service]),
) -> ExperimentService:
    """실험 서비스 의존성"""
    return service


# 타입 힌트를 위한 Annotated 타입
DiscriminationServiceDep = Annotated[DiscriminationService, Depends(get_discrimination_service)]
CorrectionServiceDep = Annotated[CorrectionService, Depends(get_correction_service)]
TomographyServiceDep = Annotated[TomographyService, Depends(get_tomography_service)]
ExperimentServiceDep = Annotated[ExperimentService, Depends(get_experiment_service)]
