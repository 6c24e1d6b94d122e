"""
sim/gates.py 테스트
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quditlab.core.exceptions import InvalidDimension, UnknownGate
from quditlab.sim.gates import (
    QUBIT_GATES,
    branch_phase,
    controlled_shift,
    controlled_Zpow,
    gen_H,
    gen_X,
    gen_Z,
    qubit_gate,
)

DIMENSIONS = [2, 3, 4, 5, 7]

pytestmark = pytest.mark.unit


def is_unitary(matrix: np.ndarray) -> bool:
    return np.allclose(matrix @ matrix.conj().T, np.eye(matrix.shape[0]), atol=1e-10)


class TestQubitGates:
    """큐비트 게이트 테스트"""

    @pytest.mark.parametrize("name", [g for g in QUBIT_GATES if g != "P"])
    def test_unitary(self, name):
        assert is_unitary(qubit_gate(name).matrix)

    def test_p_gate(self):
        """P(π/8) = diag(1, e^{iπ/8})"""
        gate = qubit_gate("P", math.pi / 8)
        assert np.allclose(gate.matrix, np.diag([1, np.exp(1j * math.pi / 8)]))

    def test_p_requires_theta(self):
        with pytest.raises(UnknownGate):
            qubit_gate("P")

    def test_unknown(self):
        with pytest.raises(UnknownGate):
            qubit_gate("T")

    def test_sdag_alias(self):
        assert np.allclose(qubit_gate("sdag").matrix, qubit_gate("SDG").matrix)

    def test_cnot_control_first(self):
        """CNOT|10> = |11>"""
        cnot = qubit_gate("CNOT").matrix
        assert cnot[3, 2] == 1


class TestQuditGates:
    """일반화 게이트 대수"""

    @pytest.mark.parametrize("d", DIMENSIONS)
    def test_x_is_conjugated_z(self, d):
        """X_d = H_d Z_d H_d†"""
        h, z = gen_H(d).matrix, gen_Z(d).matrix
        assert np.allclose(gen_X(d).matrix, h @ z @ h.conj().T, atol=1e-10)

    @pytest.mark.parametrize("d", DIMENSIONS)
    def test_order_d(self, d):
        """(Z_d)^d = (X_d)^d = I"""
        assert np.allclose(gen_Z(d).power(d).matrix, np.eye(d), atol=1e-10)
        assert np.allclose(gen_X(d).power(d).matrix, np.eye(d), atol=1e-10)

    @pytest.mark.parametrize("d", DIMENSIONS)
    def test_unitarity(self, d):
        for gate in (gen_Z(d), gen_X(d), gen_H(d), controlled_shift(d), controlled_Zpow(d)):
            assert is_unitary(gate.matrix)

    @pytest.mark.parametrize("d", DIMENSIONS)
    def test_x_shifts_down(self, d):
        """X_d|j> = |j-1>"""
        x = gen_X(d).matrix
        for j in range(d):
            assert x[(j - 1) % d, j] == 1

    def test_qubit_forms_coincide(self):
        """d=2 에서 H_d = H, X_d = X, C_{X_d} = CNOT, C_{Z_d} = CZ"""
        assert np.allclose(gen_H(2).matrix, qubit_gate("H").matrix)
        assert np.allclose(gen_X(2).matrix, qubit_gate("X").matrix)
        assert np.allclose(controlled_shift(2).matrix, qubit_gate("CNOT").matrix)
        assert np.allclose(controlled_Zpow(2).matrix, qubit_gate("CZ").matrix)

    @given(st.integers(min_value=2, max_value=7), st.data())
    def test_controlled_shift_action(self, d, data):
        """C_{X_d}|i,j> = |i, j-i>, 수반은 |i, j+i>"""
        i = data.draw(st.integers(min_value=0, max_value=d - 1))
        j = data.draw(st.integers(min_value=0, max_value=d - 1))
        ket = np.zeros(d * d)
        ket[i * d + j] = 1
        assert np.argmax(np.abs(controlled_shift(d).matrix @ ket)) == i * d + (j - i) % d
        out = controlled_shift(d, adjoint=True).matrix @ ket
        assert np.argmax(np.abs(out)) == i * d + (j + i) % d

    def test_branch_phase(self):
        gate = branch_phase([0.0, math.pi / 8])
        assert gate.d == 2
        assert np.allclose(np.diag(gate.matrix), [1, np.exp(1j * math.pi / 8)])

    def test_invalid_dimension(self):
        with pytest.raises(InvalidDimension):
            gen_H(1)
