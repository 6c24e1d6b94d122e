"""
sim/tomography.py 테스트
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quditlab.core.exceptions import InvalidWires, UnsupportedDimension
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.state import DensityMatrix
from quditlab.schemas.tomography import PauliString
from quditlab.sim.entangled import gbs, ghz
from quditlab.sim.tensor import density_of, make_state, partial_trace, zero_state
from quditlab.sim.tomography import (
    expectation,
    metrics,
    pauli_matrix,
    pauli_strings,
    reconstruct,
)

pytestmark = pytest.mark.unit


def random_qubits(n: int, seed: int):
    rng = np.random.default_rng(seed)
    return make_state(2, n, rng.normal(size=2**n) + 1j * rng.normal(size=2**n), renormalize=True)


class TestExpectation:
    """파울리 기대값"""

    def test_pauli_strings_count(self):
        strings = pauli_strings(2)
        assert len(strings) == 16
        assert strings[0].label == "II"
        assert strings[-1].label == "ZZ"

    @given(st.integers(min_value=0, max_value=2**32 - 1), st.sampled_from(["XY", "ZI", "YZ", "XX"]))
    def test_exact_matches_trace(self, seed, label):
        """exact 기대값 == Tr(ρ P)"""
        state = random_qubits(2, seed)
        pauli = PauliString.parse(label)
        expected = np.trace(density_of(state).entries @ pauli_matrix(pauli)).real
        assert expectation(state, pauli, [0, 1]) == pytest.approx(expected, abs=1e-10)

    def test_bell_correlations(self):
        """(|01> - |10>)/√2: <XX> = <YY> = <ZZ> = -1"""
        state = gbs(GBSLabel.parse("2:2:1:1"))
        for label in ("XX", "YY", "ZZ"):
            assert expectation(state, PauliString.parse(label), [0, 1]) == pytest.approx(-1.0)

    def test_sampled_close_to_exact(self):
        state = random_qubits(2, 3)
        pauli = PauliString.parse("YX")
        exact = expectation(state, pauli, [0, 1])
        sampled = expectation(state, pauli, [0, 1], shots=8192, seed=1)
        assert sampled == pytest.approx(exact, abs=0.05)

    def test_sampled_y_basis_rotation(self):
        """|+i> 의 <Y> = 1 (S† 다음 H 회전)"""
        plus_i = make_state(2, 1, [2**-0.5, 1j * 2**-0.5])
        assert expectation(plus_i, PauliString.parse("Y"), [0], shots=500, seed=2) == 1.0

    def test_qudit_rejected(self):
        with pytest.raises(UnsupportedDimension):
            expectation(zero_state(3, 1), PauliString.parse("Z"), [0])

    def test_length_mismatch(self):
        with pytest.raises(InvalidWires):
            expectation(zero_state(2, 2), PauliString.parse("Z"), [0, 1])


class TestReconstruct:
    """밀도 행렬 재구성"""

    @pytest.mark.parametrize(
        "state, wires",
        [
            (ghz("-", 1, 0), [0, 1, 2]),
            (gbs(GBSLabel.parse("2:2:1:1")), [0, 1]),
            (ghz("-", 1, 0), [2, 0]),
        ],
    )
    def test_exact_matches_partial_trace(self, state, wires):
        rho = reconstruct(state, wires)
        oracle = partial_trace(density_of(state), wires, 2, state.wire_count)
        assert np.allclose(rho.entries, oracle.entries, atol=1e-10)

    def test_deterministic(self):
        """같은 시드 -> 같은 행렬 (스레드 수와 무관)"""
        state = ghz("-", 1, 0)
        a = reconstruct(state, [0, 1, 2], shots=512, seed=4, workers=1)
        b = reconstruct(state, [0, 1, 2], shots=512, seed=4, workers=8)
        assert np.array_equal(a.entries, b.entries)

    def test_sampled_unit_trace(self):
        rho = reconstruct(ghz("+", 0, 0), [0, 1], shots=1000, seed=1)
        assert rho.trace() == pytest.approx(1.0)
        assert rho.is_hermitian()

    def test_max_wires(self):
        with pytest.raises(InvalidWires):
            reconstruct(zero_state(2, 4), [0, 1, 2, 3])


class TestMetrics:
    """비교 지표"""

    def test_identical(self):
        state = ghz("-", 1, 0)
        rho = density_of(state)
        m = metrics(rho, rho, state)
        assert m.fidelity_pure == pytest.approx(1.0)
        assert m.fidelity_general == pytest.approx(1.0, abs=1e-6)
        assert m.max_abs_dev == 0.0

    def test_deviation_components(self):
        """모듈러스 / 실수부 / 허수부 편차"""
        rho_t = DensityMatrix.from_array(np.eye(2) / 2)
        rho_e = DensityMatrix.from_array([[0.5, 0.03 + 0.04j], [0.03 - 0.04j, 0.5]])
        m = metrics(rho_t, rho_e)

        assert m.fidelity_pure is None
        assert m.max_abs_dev == pytest.approx(0.05)
        assert m.avg_abs_dev == pytest.approx(0.025)
        assert m.max_abs_dev_real == pytest.approx(0.03)
        assert m.max_abs_dev_imag == pytest.approx(0.04)

    def test_orthogonal_states(self):
        a = density_of(zero_state(2, 1))
        b = DensityMatrix.from_array([[0, 0], [0, 1]])
        assert metrics(a, b).fidelity_general == pytest.approx(0.0, abs=1e-7)
