"""
pytest 설정 및 공통 fixture
"""

import math

import pytest
from hypothesis import settings as hypothesis_settings

from quditlab.core.config import Settings
from quditlab.core.container import get_container, reset_container
from quditlab.schemas.correction import ErrorSpec
from quditlab.schemas.label import GBSLabel
from quditlab.services.correction_service import CorrectionService
from quditlab.services.discrimination_service import DiscriminationService
from quditlab.services.tomography_service import TomographyService

# 상태 벡터 연산이 느린 편이므로 예제 수를 줄이고 deadline 해제
hypothesis_settings.register_profile("quditlab", max_examples=40, deadline=None)
hypothesis_settings.load_profile("quditlab")


@pytest.fixture(autouse=True)
def fresh_container(monkeypatch):
    """테스트마다 새 컨테이너 (환경 변수 영향 제거)"""
    for name in ("SHOTS", "SEED", "DECISION_THRESHOLD", "MAX_AMPLITUDES", "LOG_FORMAT", "DEBUG"):
        monkeypatch.delenv(name, raising=False)
    reset_container()
    yield
    reset_container()


@pytest.fixture
def container():
    """설정이 로드된 DI 컨테이너"""
    return get_container()


@pytest.fixture
def test_settings():
    """테스트용 설정 fixture"""
    return Settings(debug=True, api_host="127.0.0.1", api_port=8001)


@pytest.fixture
def discrimination_service():
    return DiscriminationService(decision_threshold=0.9, default_shots=8192)


@pytest.fixture
def correction_service():
    return CorrectionService(factorization_tol=1e-8, fidelity_tol=1e-9)


@pytest.fixture
def tomography_service():
    return TomographyService(default_shots=8192, max_wires=3, workers=4)


@pytest.fixture
def bell_target():
    """교정 실험의 저장 라벨: φ=1, p=1 -> (|01> - |10>)/√2"""
    return GBSLabel(d=2, n=2, p=1, q=(1,))


@pytest.fixture
def ghz_target():
    """교정 실험의 저장 라벨: Ψ-_010"""
    return GBSLabel(d=2, n=3, p=1, q=(1, 0))


@pytest.fixture
def pi8_error():
    """|000> + e^{iπ/8}|111> 로 만드는 오류 (3 큐비트)"""
    return ErrorSpec(deltas=(0.0, math.pi / 8), p_err=0, q_err=(0, 0))


@pytest.fixture
def experiment_service(container):
    """컨테이너로 조립한 실험 서비스"""
    return container.experiment_service()
