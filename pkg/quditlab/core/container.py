"""
Dependency Injection Container
"""

import logging

from dependency_injector import containers, providers

from quditlab.core.config import Settings
from quditlab.services.correction_service import CorrectionService
from quditlab.services.discrimination_service import DiscriminationService
from quditlab.services.experiment_service import ExperimentService
from quditlab.services.tomography_service import TomographyService

logger = logging.getLogger(__name__)


class Container(containers.DeclarativeContainer):
    """DI 컨테이너 - 모든 서비스 의존성 중앙 관리"""

    # Configuration provider
    config = providers.Configuration()

    # 설정 객체 자체 (ExperimentService 가 허용 오차/기본값을 읽음)
    settings = providers.Singleton(Settings)

    discrimination_service = providers.Factory(
        DiscriminationService,
        decision_threshold=config.decision_threshold,
        default_shots=config.default_shots,
    )

    correction_service = providers.Factory(
        CorrectionService,
        factorization_tol=config.factorization_tol,
        fidelity_tol=config.correction_fidelity_tol,
        exact_tol=config.exact_tol,
    )

    tomography_service = providers.Factory(
        TomographyService,
        default_shots=config.default_shots,
        max_wires=config.tomography_max_wires,
        workers=config.tomography_workers,
    )

    # ExperimentService 는 위 세 서비스에 의존
    experiment_service = providers.Factory(
        ExperimentService,
        discrimination=discrimination_service,
        correction=correction_service,
        tomography=tomography_service,
        settings=settings,
    )


# 전역 컨테이너 및 Settings 인스턴스
_container = None
_settings = None


def get_container() -> Container:
    """전역 컨테이너 인스턴스 반환 (싱글톤)"""
    global _container
    if _container is None:
        _container = Container()
        settings = get_settings()
        _container.config.from_pydantic(settings)
        _container.settings.override(providers.Object(settings))
    return _container


def get_settings() -> Settings:
    """현재 설정 인스턴스 반환"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_container():
    """컨테이너 초기화 (주로 테스트용)"""
    global _container, _settings
    if _container:
        _container.reset_override()
    _container = None
    _settings = None
