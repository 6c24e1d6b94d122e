"""
비파괴 판별 서비스 - 위상/패리티 검사와 라벨 판별
"""

import logging

from quditlab.core.exceptions import AmbiguousOutcome, InvalidSampling, InvalidWires
from quditlab.schemas.circuit import CheckOutcome, Circuit, parse_outcome_key
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import CheckReport, Discrimination, DiscriminationReport
from quditlab.schemas.state import StateVector
from quditlab.sim.engine import derive_seed, evolve, measure_check
from quditlab.sim.entangled import classify
from quditlab.sim.protocols import GateSet, add_parity_check, add_phase_check
from quditlab.sim.tensor import fidelity, tensor, zero_state

logger = logging.getLogger(__name__)


class DiscriminationService:
    """GBS 족 상태의 위상 지수와 패리티 오프셋을 보조 큐디트로 판별"""

    def __init__(self, decision_threshold: float = 0.9, default_shots: int = 8192) -> None:
        self.decision_threshold = decision_threshold
        self.default_shots = default_shots

    def resolve_shots(self, shots: int | None = None, exact: bool = False) -> int | None:
        """exact 이면 None (정확한 분포), 아니면 shots 또는 기본 샷 수"""
        if exact:
            return None
        if shots is None:
            return self.default_shots
        if shots < 1:
            raise InvalidSampling(f"shots={shots} < 1")
        return shots

    def phase_check(
        self, system: StateVector, shots: int | None = None, seed: int = 0
    ) -> CheckOutcome:
        """위상 검사: 보조 큐디트 결과 p, post_state 는 시스템 상태

        Args:
            system: n-와이어 시스템 상태
            shots: None 이면 정확한 분포만 사용
            seed: 샘플링 시드
        """
        d, n = system.dim_per_wire, system.wire_count
        circuit = add_phase_check(Circuit(d=d, n=n + 1), GateSet(d), range(n), n)
        register = evolve(circuit, tensor(system, zero_state(d, 1)))
        outcome = measure_check(register, [n], shots, seed, drop=True)
        logger.debug(f"위상 검사: {outcome.distribution}")
        return outcome

    def parity_check(
        self, system: StateVector, i: int, shots: int | None = None, seed: int = 0
    ) -> CheckOutcome:
        """i 번째 상대 패리티 검사 (1 <= i <= n-1): 결과 q_i - q_{i-1}"""
        d, n = system.dim_per_wire, system.wire_count
        if not 1 <= i <= n - 1:
            raise InvalidWires(f"패리티 검사 인덱스 i={i} 는 [1, {n - 1}] 밖입니다")
        circuit = add_parity_check(Circuit(d=d, n=n + 1), GateSet(d), range(n), i, n)
        register = evolve(circuit, tensor(system, zero_state(d, 1)))
        outcome = measure_check(register, [n], shots, seed, drop=True)
        logger.debug(f"패리티 검사 i={i}: {outcome.distribution}")
        return outcome

    def _decide(self, check: CheckOutcome, what: str) -> int:
        if check.share < self.decision_threshold:
            raise AmbiguousOutcome(
                f"{what} 결과가 모호합니다: 최빈 {check.outcome} 비율 {check.share:.3f} "
                f"< 임계값 {self.decision_threshold}",
                share=check.share,
            )
        return parse_outcome_key(check.outcome, check.post_state.dim_per_wire)[0]

    def discriminate(
        self, system: StateVector, shots: int | None = None, seed: int = 0
    ) -> Discrimination:
        """위상 검사 후 모든 패리티 검사를 살아남은 상태에 순차 적용하고 라벨 판별

        Raises:
            AmbiguousOutcome: 최빈 결과 비율이 판정 임계값 미만
        """
        d, n = system.dim_per_wire, system.wire_count
        try:
            phase = self.phase_check(system, shots, derive_seed(seed, 0))
            p = self._decide(phase, "위상 검사")
            state = phase.post_state
            parity: list[CheckOutcome] = []
            for i in range(1, n):
                check = self.parity_check(state, i, shots, derive_seed(seed, i))
                parity.append(check)
                state = check.post_state
            relative = [self._decide(c, f"패리티 검사 {i}") for i, c in enumerate(parity, 1)]
        except AmbiguousOutcome as e:
            logger.error(f"판별 실패: {e}")
            raise
        label = classify(p, relative, d, n)
        logger.info(f"판별 결과: {label} ({label.ket_name()})")
        return Discrimination(label=label, post_state=state, phase=phase, parity=tuple(parity))

    def report(
        self,
        target: GBSLabel,
        system: StateVector,
        shots: int | None = None,
        seed: int = 0,
    ) -> DiscriminationReport:
        """판별을 실행하고 보고서 생성"""
        result = self.discriminate(system, shots, seed)
        return DiscriminationReport(
            target=str(target),
            inferred=str(result.label),
            ket_name=result.label.ket_name(),
            correct=result.label == target,
            phase=CheckReport.from_outcome(result.phase),
            parity=[CheckReport.from_outcome(c) for c in result.parity],
            post_state_fidelity=fidelity(system, result.post_state),
            shots=shots,
            seed=seed,
        )
