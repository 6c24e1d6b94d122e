"""
자동 교정 서비스 - 오류 주입과 3단계 교정 (임의 위상 제거, 위상 교정, 패리티 교정)
"""

import logging
from collections.abc import Sequence

import numpy as np

from quditlab.core.exceptions import (
    AmbiguousOutcome,
    DimensionMismatch,
    InputError,
    InvalidWires,
    NotFactorizable,
)
from quditlab.schemas.circuit import CheckOutcome, Circuit, outcome_key, parse_outcome_key
from quditlab.schemas.correction import CorrectionRecord, ErrorSpec
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import (
    CorrectionReport,
    FullRegisterResult,
    ParityTableCell,
    PipelineResult,
    StepResult,
)
from quditlab.schemas.state import StateVector
from quditlab.sim.engine import evolve, measure_check
from quditlab.sim.entangled import branch_state, gbs
from quditlab.sim.protocols import (
    GateSet,
    add_parity_correction,
    add_phase_correction,
    add_phase_difference,
    add_step1,
    full_register_circuit,
    full_register_layout,
)
from quditlab.sim.tensor import factorize, fidelity, project_out, tensor, zero_state

logger = logging.getLogger(__name__)

# GHZ 패리티 진단 표: 오류 상태 첫 가지 ket 와 열 순서
PARITY_TABLE_STATES = ("000", "001", "010", "011")
PARITY_TABLE_COLUMNS = ("00", "01", "10", "11")

STAGE_NAMES = {1: "phase_removed", 2: "phase_corrected", 3: "parity_corrected"}


class CorrectionService:
    """결맞은 오류가 주입된 GBS 를 저장된 라벨로 되돌리는 교정 로직"""

    def __init__(
        self,
        factorization_tol: float = 1e-8,
        fidelity_tol: float = 1e-9,
        exact_tol: float = 1e-10,
    ) -> None:
        self.factorization_tol = factorization_tol
        self.fidelity_tol = fidelity_tol
        self.exact_tol = exact_tol

    def inject(self, label: GBSLabel, err: ErrorSpec) -> StateVector:
        """(1/√d) Σ_j e^{2πijp'/d} e^{iδ_j} |j>|j+q'_1>... (label 은 목표 기록용)"""
        if err.d != label.d:
            raise DimensionMismatch(f"오류 d={err.d} != 라벨 d={label.d}")
        if len(err.q_err) != label.n - 1:
            raise DimensionMismatch(f"q_err 길이 {len(err.q_err)} != n-1 = {label.n - 1}")
        d = label.d
        j = np.arange(d)
        phases = np.exp(2j * np.pi * j * err.p_err / d) * np.exp(1j * np.asarray(err.deltas))
        return branch_state(d, err.q_err, phases)

    def step1_remove_phase(self, state: StateVector) -> StepResult:
        """임의 위상과 위상 지수를 보조 큐디트로 옮김

        Raises:
            NotFactorizable: 시스템-보조 상태가 곱 상태가 아님 (GBS 형태가 아닌 입력)
        """
        d, n = state.dim_per_wire, state.wire_count
        circuit = add_step1(Circuit(d=d, n=n + 1), GateSet(d), range(n), n)
        register = evolve(circuit, tensor(state, zero_state(d, 1)))
        try:
            system, ancilla, schmidt = factorize(register, range(n), self.factorization_tol)
        except NotFactorizable as e:
            logger.error(f"1단계 분해 실패: {e}")
            raise
        logger.debug(f"1단계 완료: 최대 슈미트 계수 {schmidt:.12f}")
        return StepResult(system=system, ancilla=ancilla)

    def step2_phase_difference(
        self, state: StateVector, stored_p: int, shots: int | None = None, seed: int = 0
    ) -> CheckOutcome:
        """|p> 로 준비된 보조 큐디트가 p - p' 로 측정됨 (post_state 는 위상 p 인 시스템)

        입력은 임의 위상 δ 가 없는 GBS 여야 한다.

        Raises:
            AmbiguousOutcome: 보조 결과가 한 값에 몰리지 않음 (δ 가 남은 입력)
        """
        d, n = state.dim_per_wire, state.wire_count
        circuit = add_phase_difference(Circuit(d=d, n=n + 1), GateSet(d), range(n), n, stored_p)
        register = evolve(circuit, tensor(state, zero_state(d, 1)))
        check = measure_check(register, [n], shots, seed, drop=True)
        top = max(check.distribution.values())
        if top < 1.0 - self.exact_tol:
            raise AmbiguousOutcome(
                f"위상 차이 결과가 확정되지 않음 (최대 확률 {top:.6f}); 임의 위상이 남은 입력",
                share=top,
            )
        return check

    def step2_correct_phase(self, state: StateVector, stored_p: int) -> StateVector:
        """위상 없는 GBS 에 C_{Z_d}(|p> -> 와이어 0) 적용"""
        d, n = state.dim_per_wire, state.wire_count
        circuit = add_phase_correction(Circuit(d=d, n=n + 1), GateSet(d), range(n), n, stored_p)
        register = evolve(circuit, tensor(state, zero_state(d, 1)))
        return project_out(register, [n], [stored_p % d])

    def step3_correct_parity(
        self,
        state: StateVector,
        stored_q: Sequence[int],
        err_q: Sequence[int] | None = None,
    ) -> tuple[StateVector, tuple[int, ...]]:
        """i = 1..n-1 순서로 오프셋 교정, 패리티 보조 최종값 q_i - q'_i 반환"""
        d, n = state.dim_per_wire, state.wire_count
        if n < 2:
            raise InvalidWires("패리티 교정에는 와이어가 2 개 이상 필요합니다")
        relative = GBSLabel.make(d, n, 0, stored_q).relative_parities()
        gs = GateSet(d)
        ancillas = list(range(n, 2 * n - 1))
        circuit = Circuit(d=d, n=2 * n - 1)
        for i, anc in zip(range(1, n), ancillas, strict=True):
            circuit = add_parity_correction(circuit, gs, range(n), i, anc, relative[i - 1])
        register = evolve(circuit, tensor(state, zero_state(d, n - 1)))
        outcome = measure_check(register, ancillas, None, 0, drop=True)
        diag = tuple(parse_outcome_key(outcome.outcome, d))
        if err_q is not None:
            expected = tuple((q - e) % d for q, e in zip(stored_q, err_q, strict=True))
            if diag != expected:
                logger.warning(f"패리티 진단 {diag} != 예상 q - q' {expected}")
        return outcome.post_state, diag

    def autocorrect(
        self, err_state: StateVector, stored: GBSLabel
    ) -> tuple[StateVector, CorrectionRecord]:
        """1단계 -> 위상 교정 -> 패리티 교정 (위상 차이 측정은 쓰지 않음)"""
        step1 = self.step1_remove_phase(err_state)
        phased = self.step2_correct_phase(step1.system, stored.p)
        final, diag = self.step3_correct_parity(phased, stored.q)
        record = CorrectionRecord(
            d=stored.d, step1_ancilla=step1.ancilla, phase_ancilla=stored.p, parity_diag=diag
        )
        return final, record

    def run_pipeline(
        self,
        label: GBSLabel,
        err: ErrorSpec,
        steps: int = 3,
        phase_difference: bool = False,
    ) -> PipelineResult:
        """오류 주입 후 1..steps 단계까지 실행

        Args:
            steps: 1 (위상 제거), 2 (+위상 교정), 3 (+패리티 교정)
            phase_difference: True 이면 δ 를 뺀 주입 상태에서 p - p' 진단을 함께 기록
        """
        if steps not in (1, 2, 3):
            raise InputError(f"steps 는 1, 2, 3 중 하나여야 합니다: {steps}")
        logger.info(f"교정 파이프라인: target={label}, steps=1..{steps}")
        state = self.inject(label, err)
        stages: dict[str, StateVector] = {"injected": state}

        phase_diff = None
        if phase_difference:
            # δ 를 뺀 주입 상태 gbs(p', q') 에서 측정
            phase_free = self.inject(label, err.model_copy(update={"deltas": (0.0,) * err.d}))
            check = self.step2_phase_difference(phase_free, label.p)
            phase_diff = parse_outcome_key(check.outcome, label.d)[0]

        step1 = self.step1_remove_phase(state)
        state = stages[STAGE_NAMES[1]] = step1.system
        diag: tuple[int, ...] = ()
        if steps >= 2:
            state = stages[STAGE_NAMES[2]] = self.step2_correct_phase(state, label.p)
        if steps >= 3:
            state, diag = self.step3_correct_parity(state, label.q, err.q_err)
            stages[STAGE_NAMES[3]] = state

        record = CorrectionRecord(
            d=label.d,
            step1_ancilla=step1.ancilla,
            phase_ancilla=label.p if steps >= 2 else None,
            phase_diff=phase_diff,
            parity_diag=diag,
        )
        score = fidelity(state, gbs(label))
        logger.info(f"교정 결과 충실도: {score:.12f}")
        return PipelineResult(
            stages=stages,
            final_state=state,
            record=record,
            fidelity=score,
            steps_run=tuple(range(1, steps + 1)),
        )

    def run_full_register(
        self, err_state: StateVector, stored: GBSLabel, shots: int | None = None, seed: int = 0
    ) -> FullRegisterResult:
        """시스템 + 위상 제거 보조 + 저장 위상 보조 + 패리티 보조를 한 회로로 교정"""
        d, n = stored.d, stored.n
        if (err_state.dim_per_wire, err_state.wire_count) != (d, n):
            raise DimensionMismatch("오류 상태와 저장 라벨의 (d, n) 이 다릅니다")
        layout = full_register_layout(n)
        register = tensor(err_state, zero_state(d, n + 1))
        register = evolve(full_register_circuit(stored), register)
        parity = measure_check(register, layout["parity"], shots, seed, drop=True)
        # 남은 와이어: 시스템 0..n-1, 위상 제거 보조 n, 저장 위상 보조 n+1
        system, ancillas, _ = factorize(parity.post_state, range(n), self.factorization_tol)
        step1_ancilla = project_out(ancillas, [1], [stored.p])
        return FullRegisterResult(
            final_state=system,
            parity=parity,
            step1_ancilla=step1_ancilla,
            fidelity=fidelity(system, gbs(stored)),
        )

    def parity_diagnostic_table(self) -> list[ParityTableCell]:
        """GHZ 오류 상태 4 종 x 저장 상대 패리티 4 종의 최종 패리티 보조 큐비트"""
        cells = []
        for ket in PARITY_TABLE_STATES:
            erroneous = GBSLabel.make(2, 3, 0, tuple(int(x) for x in ket[1:]))
            check = outcome_key(erroneous.relative_parities(), 2)
            for column in PARITY_TABLE_COLUMNS:
                stored_q = np.cumsum([int(x) for x in column]) % 2
                _, diag = self.step3_correct_parity(gbs(erroneous), tuple(int(x) for x in stored_q))
                cells.append(
                    ParityTableCell(
                        state=ket,
                        check_result=check,
                        initial_parity=column,
                        final_parity=outcome_key(diag, 2),
                    )
                )
        return cells

    def report(
        self, label: GBSLabel, err: ErrorSpec, result: PipelineResult, dump_states: bool = False
    ) -> CorrectionReport:
        """파이프라인 결과 보고서"""
        record = result.record
        return CorrectionReport(
            target=str(label),
            error=err,
            steps_run=list(result.steps_run),
            final_state={
                k: [round(v.real, 12) + 0.0, round(v.imag, 12) + 0.0]
                for k, v in result.final_state.support(1e-12).items()
            },
            fidelity=result.fidelity,
            passed=result.fidelity >= 1.0 - self.fidelity_tol,
            step1_ancilla=record.step1_ancilla.to_payload() if record.step1_ancilla else None,
            phase_ancilla=record.phase_ancilla,
            phase_diff=record.phase_diff,
            parity_diag=record.parity_string(),
            states=(
                {name: s.to_payload() for name, s in result.stages.items()} if dump_states else None
            ),
        )
