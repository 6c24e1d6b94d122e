"""
실험 서비스 - 이름 붙은 프리셋 실험과 큐디트 왕복 검증
"""

import logging
import math
from collections.abc import Callable
from itertools import product

import numpy as np

from quditlab.core.config import Settings
from quditlab.core.exceptions import (
    InvalidDimension,
    InvalidSampling,
    InvalidWires,
    RegisterTooLarge,
    UnknownPreset,
)
from quditlab.schemas.correction import ErrorSpec
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import DiscriminationReport, PresetReport, QuditVerifyReport
from quditlab.schemas.state import StateVector
from quditlab.services.correction_service import CorrectionService
from quditlab.services.discrimination_service import DiscriminationService
from quditlab.services.tomography_service import TomographyService
from quditlab.sim.engine import derive_seed, evolve, run
from quditlab.sim.entangled import all_labels, gbs, ghz
from quditlab.sim.protocols import (
    full_register_circuit,
    parity_check_circuit,
    phase_check_circuit,
)
from quditlab.sim.tensor import fidelity, tensor, zero_state

logger = logging.getLogger(__name__)

# 교정 실험에 쓰이는 π/8 임의 위상 오류
PI_8_ERROR = (0.0, math.pi / 8)

# 왕복 검증 δ 격자
DELTA_GRID = (0.0, math.pi / 8, math.pi / 3, math.pi)

# 오류 상태 ket -> 저장 상대 패리티 00/01/10/11 에 대한 최종 패리티 보조 큐비트
EXPECTED_PARITY_TABLE = {
    "000": ("00", "01", "11", "10"),
    "001": ("01", "00", "10", "11"),
    "010": ("10", "11", "01", "00"),
    "011": ("11", "10", "00", "01"),
}

# 샘플 토모그래피 합격 기준
TOMOGRAPHY_MIN_FIDELITY = 0.99
TOMOGRAPHY_MAX_AVG_DEV = 0.01

BELL_TARGET = GBSLabel(d=2, n=2, p=1, q=(1,))
GHZ_TARGET = GBSLabel(d=2, n=3, p=1, q=(1, 0))

# 프리셋 이름 -> (설명, 실행 메서드 이름)
PRESETS: dict[str, tuple[str, str]] = {
    "ghz-phase-check": ("GHZ Ψ-_010 위상 검사, 보조 큐비트 1", "_ghz_phase_check"),
    "ghz-parity-check": ("GHZ Ψ-_010 패리티 검사, 보조 큐비트 11", "_ghz_parity_check"),
    "bell-correction": ("벨 상태 단일 회로 교정 (φ=1, p=1)", "_bell_correction"),
    "ghz-phase-removal": ("GHZ e^{iπ/8} 임의 위상 제거", "_ghz_phase_removal"),
    "ghz-phase-flip": ("GHZ 위상 뒤집힘 교정 Ψ+_000 -> Ψ-_000", "_ghz_phase_flip"),
    "ghz-bit-flip": ("GHZ 비트 뒤집힘 교정 Ψ-_000 -> Ψ-_010", "_ghz_bit_flip"),
    "parity-diagnostic-table": ("GHZ 패리티 진단 표 16 칸", "_parity_table"),
    "tomo-ghz-phase-check": ("위상 검사 후 GHZ 토모그래피", "_tomo_ghz_phase_check"),
    "tomo-phase-ancilla": ("위상 검사 보조 큐비트 토모그래피", "_tomo_phase_ancilla"),
    "tomo-ghz-parity-check": ("패리티 검사 후 GHZ 토모그래피", "_tomo_ghz_parity"),
    "tomo-parity-ancilla": ("패리티 검사 보조 큐비트 토모그래피", "_tomo_parity_ancilla"),
    "tomo-bell-correction": ("교정된 벨 상태 토모그래피", "_tomo_bell_correction"),
    "tomo-ghz-correction": ("교정된 GHZ 상태 토모그래피", "_tomo_ghz_correction"),
}


class ExperimentService:
    """프리셋 실험 실행과 기대 결과 확인"""

    def __init__(
        self,
        discrimination: DiscriminationService,
        correction: CorrectionService,
        tomography: TomographyService,
        settings: Settings,
    ) -> None:
        self.discrimination = discrimination
        self.correction = correction
        self.tomography = tomography
        self.settings = settings
        self._presets: dict[str, tuple[str, Callable[[int, int], PresetReport]]] = {
            name: (description, getattr(self, method))
            for name, (description, method) in PRESETS.items()
        }

    # ------------------------------------------------------------------
    # 프리셋
    # ------------------------------------------------------------------

    def preset_names(self) -> list[str]:
        return list(self._presets)

    def describe(self, name: str) -> str:
        return self._lookup(name)[0]

    def _lookup(self, name: str) -> tuple[str, Callable[[int, int], PresetReport]]:
        if name not in self._presets:
            available = ", ".join(self._presets)
            raise UnknownPreset(f"알 수 없는 프리셋: {name!r} (사용 가능: {available})")
        return self._presets[name]

    def run_preset(
        self, name: str, shots: int | None = None, seed: int | None = None
    ) -> PresetReport:
        """프리셋 실행 (shots/seed 미지정 시 설정 기본값)"""
        _, runner = self._lookup(name)
        shots = self.settings.default_shots if shots is None else shots
        seed = self.settings.default_seed if seed is None else seed
        if shots < 1 or seed < 0:
            raise InvalidSampling(f"shots={shots} (>= 1), seed={seed} (>= 0)")
        logger.info(f"프리셋 실행: {name} (shots={shots}, seed={seed})")
        report = runner(shots, seed)
        if not report.passed:
            logger.error(f"프리셋 {name} 기대 결과 불일치: {report.observed}")
        return report

    def _report(self, name: str, expected: dict, observed: dict, passed: bool) -> PresetReport:
        return PresetReport(
            name=name,
            description=self.describe(name),
            passed=bool(passed),
            expected=expected,
            observed=observed,
        )

    def _exact(self, score: float) -> bool:
        return score >= 1.0 - self.settings.correction_fidelity_tol

    def _ghz_phase_check(self, shots: int, seed: int) -> PresetReport:
        register = tensor(ghz("-", 1, 0), zero_state(2, 1))
        result = run(phase_check_circuit(2, 3, qubit_form=True), register, shots, seed)
        counts = result.measurements[0]
        outcome, share = counts.modal()
        return self._report(
            "ghz-phase-check",
            {"outcome": "1"},
            {"outcome": outcome, "share": share, "counts": counts.counts},
            outcome == "1" and share >= self.settings.decision_threshold,
        )

    def _ghz_parity_check(self, shots: int, seed: int) -> PresetReport:
        register = tensor(ghz("-", 1, 0), zero_state(2, 2))
        result = run(parity_check_circuit(2, 3, qubit_form=True), register, shots, seed)
        counts = result.measurements[0]
        outcome, share = counts.modal()
        return self._report(
            "ghz-parity-check",
            {"outcome": "11"},
            {"outcome": outcome, "share": share, "counts": counts.counts},
            outcome == "11" and share >= self.settings.decision_threshold,
        )

    def _bell_error(self) -> StateVector:
        err = ErrorSpec(deltas=PI_8_ERROR, p_err=0, q_err=(0,))
        return self.correction.inject(BELL_TARGET, err)

    def _ghz_error(self) -> StateVector:
        err = ErrorSpec(deltas=PI_8_ERROR, p_err=0, q_err=(0, 0))
        return self.correction.inject(GHZ_TARGET, err)

    def _bell_correction(self, shots: int, seed: int) -> PresetReport:
        result = self.correction.run_full_register(self._bell_error(), BELL_TARGET, shots, seed)
        return self._report(
            "bell-correction",
            {"state": BELL_TARGET.ket_name(), "fidelity": 1.0, "parity_ancilla": "1"},
            {"fidelity": result.fidelity, "parity_ancilla": result.parity.outcome},
            self._exact(result.fidelity) and result.parity.outcome == "1",
        )

    def _ghz_phase_removal(self, shots: int, seed: int) -> PresetReport:
        step1 = self.correction.step1_remove_phase(self._ghz_error())
        score = fidelity(step1.system, ghz("+", 0, 0))
        return self._report(
            "ghz-phase-removal", {"state": "Ψ+_000", "fidelity": 1.0}, {"fidelity": score},
            self._exact(score),
        )

    def _ghz_phase_flip(self, shots: int, seed: int) -> PresetReport:
        state = self.correction.step2_correct_phase(ghz("+", 0, 0), 1)
        score = fidelity(state, ghz("-", 0, 0))
        return self._report(
            "ghz-phase-flip", {"state": "Ψ-_000", "fidelity": 1.0}, {"fidelity": score},
            self._exact(score),
        )

    def _ghz_bit_flip(self, shots: int, seed: int) -> PresetReport:
        state, diag = self.correction.step3_correct_parity(ghz("-", 0, 0), GHZ_TARGET.q)
        score = fidelity(state, ghz("-", 1, 0))
        parity = "".join(str(x) for x in diag)
        return self._report(
            "ghz-bit-flip",
            {"state": "Ψ-_010", "fidelity": 1.0, "parity_ancilla": "10"},
            {"fidelity": score, "parity_ancilla": parity},
            self._exact(score) and parity == "10",
        )

    def _parity_table(self, shots: int, seed: int) -> PresetReport:
        cells = self.correction.parity_diagnostic_table()
        observed: dict[str, list[str]] = {}
        for cell in cells:
            observed.setdefault(cell.state, []).append(cell.final_parity)
        expected = {k: list(v) for k, v in EXPECTED_PARITY_TABLE.items()}
        return self._report("parity-diagnostic-table", expected, observed, observed == expected)

    def _tomography_preset(
        self, name: str, state: StateVector, wires: list[int], shots: int, seed: int
    ) -> PresetReport:
        report = self.tomography.tomograph(name, state, wires, shots, seed)
        m = report.metrics
        passed = (
            m.fidelity_pure is not None
            and m.fidelity_pure >= TOMOGRAPHY_MIN_FIDELITY
            and m.avg_abs_dev <= TOMOGRAPHY_MAX_AVG_DEV
        )
        return self._report(
            name,
            {"min_fidelity": TOMOGRAPHY_MIN_FIDELITY, "max_avg_abs_dev": TOMOGRAPHY_MAX_AVG_DEV},
            m.model_dump(),
            passed,
        )

    def _phase_checked(self) -> StateVector:
        register = tensor(ghz("-", 1, 0), zero_state(2, 1))
        return evolve(phase_check_circuit(2, 3, qubit_form=True), register)

    def _parity_checked(self) -> StateVector:
        register = tensor(ghz("-", 1, 0), zero_state(2, 2))
        return evolve(parity_check_circuit(2, 3, qubit_form=True), register)

    def _tomo_ghz_phase_check(self, shots: int, seed: int) -> PresetReport:
        return self._tomography_preset(
            "tomo-ghz-phase-check", self._phase_checked(), [0, 1, 2], shots, seed
        )

    def _tomo_phase_ancilla(self, shots: int, seed: int) -> PresetReport:
        return self._tomography_preset(
            "tomo-phase-ancilla", self._phase_checked(), [3], shots, seed
        )

    def _tomo_ghz_parity(self, shots: int, seed: int) -> PresetReport:
        return self._tomography_preset(
            "tomo-ghz-parity-check", self._parity_checked(), [0, 1, 2], shots, seed
        )

    def _tomo_parity_ancilla(self, shots: int, seed: int) -> PresetReport:
        return self._tomography_preset(
            "tomo-parity-ancilla", self._parity_checked(), [3, 4], shots, seed
        )

    def _tomo_bell_correction(self, shots: int, seed: int) -> PresetReport:
        register = tensor(self._bell_error(), zero_state(2, 3))
        state = evolve(full_register_circuit(BELL_TARGET, qubit_form=True), register)
        return self._tomography_preset("tomo-bell-correction", state, [0, 1], shots, seed)

    def _tomo_ghz_correction(self, shots: int, seed: int) -> PresetReport:
        err = ErrorSpec(deltas=PI_8_ERROR, p_err=0, q_err=(0, 0))
        result = self.correction.run_pipeline(GHZ_TARGET, err, steps=3)
        return self._tomography_preset(
            "tomo-ghz-correction", result.final_state, [0, 1, 2], shots, seed
        )

    # ------------------------------------------------------------------
    # 큐디트 왕복 검증
    # ------------------------------------------------------------------

    def check_register_size(self, d: int, n: int) -> None:
        """d >= 2, n >= 2, d^(n+1) <= max_amplitudes"""
        if d < 2:
            raise InvalidDimension(f"d={d} < 2")
        if n < 2:
            raise InvalidWires(f"n={n} < 2")
        if d ** (n + 1) > self.settings.max_amplitudes:
            raise RegisterTooLarge(
                f"d^(n+1) = {d ** (n + 1)} > 최대 진폭 수 {self.settings.max_amplitudes}"
            )

    def _round_trip(self, label: GBSLabel, err: ErrorSpec) -> float:
        final, _ = self.correction.autocorrect(self.correction.inject(label, err), label)
        return fidelity(final, gbs(label))

    def qudit_verify(
        self, d: int, n: int, trials: int | None = 200, seed: int = 0
    ) -> QuditVerifyReport:
        """autocorrect(inject(L, e), L) == gbs(L) 검증

        Args:
            trials: 무작위 시행 수, None 이면 모든 (저장 라벨, 오류 라벨) 쌍과 δ 격자 전수 검사
        """
        self.check_register_size(d, n)
        if trials is None:
            cases = (
                (label, ErrorSpec(deltas=deltas, p_err=err.p, q_err=err.q))
                for label in all_labels(d, n)
                for err in all_labels(d, n)
                for deltas in product(DELTA_GRID, repeat=d)
            )
        else:
            cases = (self._random_case(d, n, derive_seed(seed, t)) for t in range(trials))

        tol = self.settings.exact_tol
        passed, scores, failures = 0, [], []
        for label, err in cases:
            score = self._round_trip(label, err)
            scores.append(score)
            if score >= 1.0 - tol:
                passed += 1
            else:
                failures.append(f"{label} / {err.model_dump_json()}")
        total = len(scores)
        logger.info(f"큐디트 검증 d={d}, n={n}: {passed}/{total} 통과")
        return QuditVerifyReport(
            d=d,
            n=n,
            mode="exhaustive" if trials is None else "random",
            trials=total,
            passed=passed,
            failed=total - passed,
            min_fidelity=min(scores) if scores else 1.0,
            seed=seed,
            failures=failures[:10],
        )

    def _random_case(self, d: int, n: int, seed: int) -> tuple[GBSLabel, ErrorSpec]:
        rng = np.random.default_rng(seed)
        label = GBSLabel(
            d=d,
            n=n,
            p=int(rng.integers(d)),
            q=tuple(int(x) for x in rng.integers(d, size=n - 1)),
        )
        err = ErrorSpec(
            deltas=tuple(float(x) for x in rng.uniform(0, 2 * math.pi, size=d)),
            p_err=int(rng.integers(d)),
            q_err=tuple(int(x) for x in rng.integers(d, size=n - 1)),
        )
        return label, err

    # ------------------------------------------------------------------
    # 벨 / GHZ 판별 표
    # ------------------------------------------------------------------

    def discrimination_table(
        self, shots: int | None = None, seed: int = 0
    ) -> list[DiscriminationReport]:
        """벨 4 종과 GHZ 8 종을 모두 판별한 보고서 목록"""
        labels = [*all_labels(2, 2), *all_labels(2, 3)]
        return [
            self.discrimination.report(label, gbs(label), shots, derive_seed(seed, k))
            for k, label in enumerate(labels)
        ]
