"""
schemas/state.py 테스트
"""

import numpy as np
import pytest
from pydantic import ValidationError

from quditlab.schemas.state import DensityMatrix, MatrixPayload, StateVector

pytestmark = pytest.mark.unit


class TestStateVector:
    """StateVector 모델 테스트"""

    def test_valid_state(self):
        """정상 생성과 기본 속성"""
        state = StateVector(dim_per_wire=3, wire_count=2, amplitudes=[1] + [0] * 8)

        assert state.dim == 9
        assert state.shape == (3, 3)
        assert state.amplitudes.dtype == complex
        assert state.norm() == pytest.approx(1.0)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            StateVector(dim_per_wire=2, wire_count=2, amplitudes=[1, 0, 0])

    def test_unnormalized_rejected(self):
        with pytest.raises(ValidationError):
            StateVector(dim_per_wire=2, wire_count=1, amplitudes=[1, 1])

    def test_amplitudes_read_only(self):
        """진폭 배열은 수정할 수 없음"""
        state = StateVector(dim_per_wire=2, wire_count=1, amplitudes=[1, 0])
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0

    def test_ket_string_most_significant_first(self):
        """와이어 0 이 최상위 자릿수"""
        state = StateVector(dim_per_wire=2, wire_count=3, amplitudes=[0, 0, 1, 0, 0, 0, 0, 0])
        assert state.ket_string(2) == "010"
        assert state.support() == {"010": 1 + 0j}

    def test_ket_string_large_d_uses_commas(self):
        amps = np.zeros(11 * 11)
        amps[11 * 10 + 3] = 1
        state = StateVector(dim_per_wire=11, wire_count=2, amplitudes=amps)
        assert state.ket_string(11 * 10 + 3) == "10,3"

    def test_payload(self):
        state = StateVector(dim_per_wire=2, wire_count=1, amplitudes=[0, 1j])
        payload = state.to_payload()
        assert payload.re == [0.0, 0.0]
        assert payload.im == [0.0, 1.0]


class TestDensityMatrix:
    """DensityMatrix 모델 테스트"""

    def test_shape_checked(self):
        with pytest.raises(ValidationError):
            DensityMatrix(dim=2, entries=np.eye(3))

    def test_payload_round_trip(self):
        """JSON 표현에서 같은 행렬 복원"""
        rho = DensityMatrix.from_array([[0.5, -0.5j], [0.5j, 0.5]])
        restored = DensityMatrix.from_payload(rho.to_payload().model_dump())

        assert np.allclose(restored.entries, rho.entries)
        assert isinstance(rho.to_payload(), MatrixPayload)

    def test_trace_and_purity(self):
        rho = DensityMatrix.from_array(np.eye(2) / 2)
        assert rho.trace() == pytest.approx(1.0)
        assert rho.purity() == pytest.approx(0.5)
        assert rho.is_hermitian()
