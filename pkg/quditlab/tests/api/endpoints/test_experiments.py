"""
api/endpoints/experiments.py 테스트
"""

from unittest.mock import Mock

import pytest
from dependency_injector import providers
from fastapi.testclient import TestClient

from quditlab.core.container import get_container
from quditlab.core.exceptions import AmbiguousOutcome, NotFactorizable
from quditlab.main import create_app
from quditlab.services.experiment_service import PRESETS

pytestmark = pytest.mark.integration


@pytest.fixture
def app():
    """테스트마다 새 컨테이너에 와이어링된 앱"""
    return create_app()


@pytest.fixture
def client(app):
    """실제 서비스를 쓰는 테스트 클라이언트"""
    return TestClient(app)


@pytest.fixture
def mock_discrimination_service():
    """DiscriminationService 모의 객체"""
    service = Mock()
    service.resolve_shots.return_value = None
    return service


@pytest.fixture
def mocked_client(app, mock_discrimination_service):
    """판별 서비스를 모의 객체로 바꾼 테스트 클라이언트"""
    # Container override
    container = get_container()
    container.discrimination_service.override(providers.Object(mock_discrimination_service))

    yield TestClient(app, raise_server_exceptions=False)

    # Reset override
    container.discrimination_service.reset_override()


class TestDiscriminateEndpoint:
    """판별 엔드포인트 테스트"""

    def test_exact(self, client):
        """Ψ-_010 정확 판별"""
        # When: 정확 모드 판별 요청
        response = client.post("/api/v1/discriminate", json={"label": "2:3:1:1,0", "exact": True})

        # Then: 라벨과 ket 이름 확인
        assert response.status_code == 200
        data = response.json()
        assert data["inferred"] == "2:3:1:1,0"
        assert data["ket_name"] == "Ψ-_010"
        assert data["correct"] is True
        assert data["shots"] is None
        assert data["phase"]["counts"] is None

    def test_sampled_default_seed(self, client):
        """seed 미지정 시 설정 기본 시드"""
        response = client.post("/api/v1/discriminate", json={"label": "2:2:0:1", "shots": 1024})

        assert response.status_code == 200
        data = response.json()
        assert data["shots"] == 1024
        assert data["seed"] == 7
        assert sum(data["phase"]["counts"].values()) == 1024

    def test_invalid_label(self, client):
        """범위 밖 라벨 -> 400"""
        response = client.post("/api/v1/discriminate", json={"label": "2:3:9:0,0"})

        assert response.status_code == 400
        assert response.json()["error"] == "InvalidLabel"

    def test_request_validation(self, client):
        response = client.post("/api/v1/discriminate", json={"label": "2:2:0:0", "shots": 0})
        assert response.status_code == 422

    def test_ambiguous_outcome(self, mocked_client, mock_discrimination_service):
        """판정 실패 -> 409 와 최빈 비율"""
        # Given: 모호한 결과를 던지는 서비스
        mock_discrimination_service.report.side_effect = AmbiguousOutcome("모호함", share=0.5)

        # When
        response = mocked_client.post("/api/v1/discriminate", json={"label": "2:2:0:0"})

        # Then
        assert response.status_code == 409
        data = response.json()
        assert data["error"] == "AmbiguousOutcome"
        assert data["share"] == 0.5

    def test_not_factorizable(self, mocked_client, mock_discrimination_service):
        mock_discrimination_service.report.side_effect = NotFactorizable("얽힘", schmidt=0.7)

        response = mocked_client.post("/api/v1/discriminate", json={"label": "2:2:0:0"})

        assert response.status_code == 409
        assert response.json()["schmidt"] == 0.7

    def test_unexpected_error(self, mocked_client, mock_discrimination_service):
        """처리되지 않은 예외 -> 500"""
        mock_discrimination_service.report.side_effect = RuntimeError("boom")

        response = mocked_client.post("/api/v1/discriminate", json={"label": "2:2:0:0"})

        assert response.status_code == 500
        assert "내부 서버 오류" in response.json()["detail"]


class TestCorrectEndpoint:
    """교정 엔드포인트 테스트"""

    def test_bell_correction(self, client):
        """|00> + e^{iπ/8}|11> -> (|01> - |10>)/√2"""
        response = client.post(
            "/api/v1/correct",
            json={
                "label": "2:2:1:1",
                "error": {"deltas": [0.0, 0.39269908169872414], "p_err": 0, "q_err": [0]},
            },
        )

        assert response.status_code == 200
        data = response.json()
        assert data["passed"] is True
        assert data["parity_diag"] == "1"
        assert data["phase_ancilla"] == 1
        assert set(data["final_state"]) == {"01", "10"}
        assert data["states"] is None

    def test_default_error_and_dump(self, client):
        response = client.post(
            "/api/v1/correct", json={"label": "2:3:1:1,0", "steps": 2, "dump_states": True}
        )

        assert response.status_code == 200
        data = response.json()
        assert data["steps_run"] == [1, 2]
        assert set(data["states"]) == {"injected", "phase_removed", "phase_corrected"}

    def test_error_dimension_mismatch(self, client):
        response = client.post(
            "/api/v1/correct",
            json={"label": "2:2:1:1", "error": {"deltas": [0, 0, 0], "q_err": [0]}},
        )
        assert response.status_code == 400
        assert response.json()["error"] == "DimensionMismatch"


class TestTomographyEndpoint:
    """토모그래피 엔드포인트 테스트"""

    def test_label_exact(self, client):
        response = client.post("/api/v1/tomography", json={"label": "2:2:1:1", "exact": True})

        assert response.status_code == 200
        data = response.json()
        assert data["wires"] == [0, 1]
        assert data["metrics"]["fidelity_pure"] == pytest.approx(1.0)
        assert data["rho_e"]["dim"] == 4

    def test_circuit_subset(self, client):
        response = client.post(
            "/api/v1/tomography",
            json={"circuit": "REGISTER 2 2\nH 0\nCNOT 0 1\n", "wires": [1], "exact": True},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["target"] == "circuit"
        assert data["metrics"]["fidelity_pure"] is None

    def test_both_sources(self, client):
        response = client.post(
            "/api/v1/tomography", json={"label": "2:2:0:0", "circuit": "REGISTER 2 2\n"}
        )
        assert response.status_code == 400

    def test_qudit_rejected(self, client):
        """토모그래피는 d=2 전용"""
        response = client.post("/api/v1/tomography", json={"label": "3:2:0:0", "exact": True})
        assert response.status_code == 400
        assert response.json()["error"] == "UnsupportedDimension"


class TestPresetEndpoints:
    """프리셋 엔드포인트 테스트"""

    def test_list(self, client):
        response = client.get("/api/v1/presets")

        assert response.status_code == 200
        names = [item["name"] for item in response.json()]
        assert names == list(PRESETS)

    def test_run_without_body(self, client):
        response = client.post("/api/v1/presets/parity-diagnostic-table")

        assert response.status_code == 200
        assert response.json()["passed"] is True

    def test_run_with_options(self, client):
        response = client.post(
            "/api/v1/presets/ghz-phase-check", json={"shots": 512, "seed": 1}
        )
        assert response.status_code == 200
        assert response.json()["observed"]["outcome"] == "1"

    def test_unknown(self, client):
        response = client.post("/api/v1/presets/nope")

        assert response.status_code == 400
        assert response.json()["error"] == "UnknownPreset"
