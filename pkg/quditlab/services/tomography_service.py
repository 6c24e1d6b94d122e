"""
토모그래피 서비스
"""

import logging
from collections.abc import Sequence

import numpy as np

from quditlab.core.exceptions import InputError, InvalidSampling, NotFactorizable
from quditlab.schemas.circuit import check_wires
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import TomographyReport
from quditlab.schemas.state import DensityMatrix, StateVector
from quditlab.schemas.tomography import Metrics, PauliString
from quditlab.sim import tomography
from quditlab.sim.circuit_io import parse_circuit
from quditlab.sim.engine import evolve
from quditlab.sim.entangled import gbs
from quditlab.sim.tensor import density_of, factorize, partial_trace, zero_state

logger = logging.getLogger(__name__)


class TomographyService:
    """파울리 기대값 추정, 밀도 행렬 재구성, 비교 지표"""

    def __init__(self, default_shots: int = 8192, max_wires: int = 3, workers: int = 4) -> None:
        self.default_shots = default_shots
        self.max_wires = max_wires
        self.workers = workers

    def resolve_shots(self, shots: int | None = None, exact: bool = False) -> int | None:
        """exact 이면 None (정확한 분포), 아니면 shots 또는 기본 샷 수"""
        if exact:
            return None
        if shots is None:
            return self.default_shots
        if shots < 1:
            raise InvalidSampling(f"shots={shots} < 1")
        return shots

    def expectation(
        self,
        state: StateVector,
        pauli: PauliString | str,
        wires: Sequence[int],
        shots: int | None = None,
        seed: int = 0,
    ) -> float:
        if isinstance(pauli, str):
            pauli = PauliString.parse(pauli)
        return tomography.expectation(state, pauli, wires, shots, seed)

    def reconstruct(
        self, state: StateVector, wires: Sequence[int], shots: int | None = None, seed: int = 0
    ) -> DensityMatrix:
        return tomography.reconstruct(
            state, wires, shots, seed, workers=self.workers, max_wires=self.max_wires
        )

    def theoretical(self, state: StateVector, wires: Sequence[int]) -> DensityMatrix:
        """ρ^T: 전체 순수 상태의 밀도 행렬을 wires 로 부분 대각합"""
        return partial_trace(density_of(state), wires, state.dim_per_wire, state.wire_count)

    def reference_state(self, state: StateVector, wires: Sequence[int]) -> StateVector | None:
        """wires 부분이 순수 상태이면 그 상태, 얽혀 있으면 None"""
        wires = check_wires(wires, state.wire_count)
        if len(wires) == state.wire_count:
            permuted = np.transpose(state.as_tensor(), wires).reshape(-1)
            return StateVector(
                dim_per_wire=state.dim_per_wire, wire_count=state.wire_count, amplitudes=permuted
            )
        try:
            kept, _, _ = factorize(state, wires)
        except NotFactorizable:
            return None
        return kept

    def metrics(
        self,
        rho_t: DensityMatrix,
        rho_e: DensityMatrix,
        pure_ref: StateVector | None = None,
        shots: int | None = None,
    ) -> Metrics:
        return tomography.metrics(rho_t, rho_e, pure_ref, shots)

    def tomograph(
        self,
        target: str,
        state: StateVector,
        wires: Sequence[int],
        shots: int | None = None,
        seed: int = 0,
    ) -> TomographyReport:
        """재구성 + 이론 행렬 + 지표를 한 번에 계산 (shots=None 이면 exact)"""
        wires = check_wires(wires, state.wire_count)
        logger.info(f"토모그래피: target={target}, wires={list(wires)}, shots={shots}")
        rho_e = self.reconstruct(state, wires, shots, seed)
        rho_t = self.theoretical(state, wires)
        result = self.metrics(rho_t, rho_e, self.reference_state(state, wires), shots)
        logger.debug(f"토모그래피 지표: {result.model_dump()}")
        return TomographyReport(
            target=target,
            wires=list(wires),
            exact=shots is None,
            shots=shots,
            seed=seed,
            rho_e=rho_e.to_payload(),
            rho_t=rho_t.to_payload(),
            metrics=result,
        )

    def target_state(
        self, label: str | None = None, circuit_text: str | None = None
    ) -> tuple[str, StateVector]:
        """토모그래피 대상: GBS 라벨 또는 |0...0> 에 적용한 회로 텍스트"""
        if (label is None) == (circuit_text is None):
            raise InputError("라벨과 회로 중 정확히 하나를 지정해야 합니다")
        if label is not None:
            parsed = GBSLabel.parse(label)
            return str(parsed), gbs(parsed)
        circuit = parse_circuit(circuit_text or "")
        return "circuit", evolve(circuit, zero_state(circuit.d, circuit.n))
