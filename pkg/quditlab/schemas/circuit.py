"""
회로 / 측정 결과 스키마
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from quditlab.core.exceptions import DimensionMismatch, InvalidWires
from quditlab.schemas.gate import GateMatrix
from quditlab.schemas.state import StateVector

WireIndex = tuple[int, ...]


def check_wires(wires: Iterable[int], n: int, allow_empty: bool = False) -> WireIndex:
    """와이어 목록 검증 (0 <= w < n, 중복 없음)"""
    result = tuple(int(w) for w in wires)
    if not result and not allow_empty:
        raise InvalidWires("와이어 목록이 비어 있습니다")
    if len(set(result)) != len(result):
        raise InvalidWires(f"중복된 와이어: {list(result)}")
    bad = [w for w in result if not 0 <= w < n]
    if bad:
        raise InvalidWires(f"와이어 {bad} 는 범위 [0, {n}) 밖입니다")
    return result


def outcome_key(digits: Sequence[int], d: int) -> str:
    """측정 결과 숫자열 키 (d > 10 이면 쉼표 구분)"""
    sep = "" if d <= 10 else ","
    return sep.join(str(int(x)) for x in digits)


def parse_outcome_key(key: str, d: int) -> list[int]:
    """outcome_key 의 역변환"""
    if d > 10:
        return [int(x) for x in key.split(",")]
    return [int(ch) for ch in key]


class GateStep(BaseModel):
    """게이트 적용 단계"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["gate"] = "gate"
    gate: GateMatrix
    wires: WireIndex


class MeasureStep(BaseModel):
    """측정 마커 (기본적으로 상태를 붕괴시키지 않음)"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["measure"] = "measure"
    wires: WireIndex


CircuitStep = Annotated[GateStep | MeasureStep, Field(discriminator="kind")]


class Circuit(BaseModel):
    """게이트 적용과 측정 마커의 순서 있는 목록"""

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=2)
    n: int = Field(..., ge=1)
    steps: tuple[CircuitStep, ...] = ()

    @model_validator(mode="after")
    def check_steps(self) -> Circuit:
        """각 단계의 와이어/차원/arity 검증"""
        for step in self.steps:
            self._check_step(step)
        return self

    def _check_step(self, step: GateStep | MeasureStep) -> None:
        check_wires(step.wires, self.n)
        if isinstance(step, GateStep):
            if step.gate.d != self.d:
                raise DimensionMismatch(f"{step.gate.name}: d={step.gate.d}, 회로 d={self.d}")
            if step.gate.arity != len(step.wires):
                raise InvalidWires(
                    f"{step.gate.name}: arity {step.gate.arity} != 와이어 수 {len(step.wires)}"
                )

    def _append(self, step: GateStep | MeasureStep) -> Circuit:
        self._check_step(step)
        return self.model_copy(update={"steps": self.steps + (step,)})

    def gate(self, gate: GateMatrix, *wires: int) -> Circuit:
        """게이트 단계를 추가한 새 회로"""
        return self._append(GateStep(gate=gate, wires=tuple(wires)))

    def measure(self, *wires: int) -> Circuit:
        """측정 마커를 추가한 새 회로"""
        return self._append(MeasureStep(wires=tuple(wires)))

    def extend(self, other: Circuit) -> Circuit:
        """같은 레지스터의 다른 회로 단계를 이어 붙임"""
        if (other.d, other.n) != (self.d, self.n):
            raise DimensionMismatch("레지스터 (d, n) 이 다른 회로는 이어 붙일 수 없습니다")
        result = self
        for step in other.steps:
            result = result._append(step)
        return result

    @property
    def measure_steps(self) -> list[MeasureStep]:
        return [s for s in self.steps if isinstance(s, MeasureStep)]

    @property
    def gate_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, GateStep))


class ShotResult(BaseModel):
    """샷 샘플링 히스토그램"""

    counts: dict[str, int]
    shots: int = Field(..., ge=1)
    seed: int | None = None

    @model_validator(mode="after")
    def check_total(self) -> ShotResult:
        """counts 합 == shots"""
        total = sum(self.counts.values())
        if total != self.shots:
            raise ValueError(f"counts 합 {total} != shots {self.shots}")
        return self

    def frequencies(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}

    def modal(self) -> tuple[str, float]:
        """최빈 결과와 그 비율 (동률이면 사전순 첫 번째)"""
        key = min(self.counts, key=lambda k: (-self.counts[k], k))
        return key, self.counts[key] / self.shots

    def merge(self, other: ShotResult) -> ShotResult:
        """카운트 합산 (병렬 배치 병합용)"""
        counts = dict(self.counts)
        for k, v in other.counts.items():
            counts[k] = counts.get(k, 0) + v
        return ShotResult(counts=counts, shots=self.shots + other.shots, seed=self.seed)


class CheckOutcome(BaseModel):
    """보조 큐디트 측정 기록"""

    model_config = ConfigDict(frozen=True)

    wires: WireIndex
    distribution: dict[str, float]
    sampled: ShotResult | None = None
    post_state: StateVector

    @model_validator(mode="after")
    def check_distribution(self) -> CheckOutcome:
        """확률 합 == 1"""
        total = sum(self.distribution.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"확률 합 {total} != 1")
        return self

    @property
    def outcome(self) -> str:
        """판정에 쓰는 최빈 결과 (샘플이 있으면 샘플 기준)"""
        return self.modal()[0]

    @property
    def share(self) -> float:
        return self.modal()[1]

    def modal(self) -> tuple[str, float]:
        if self.sampled is not None:
            return self.sampled.modal()
        key = min(self.distribution, key=lambda k: (-self.distribution[k], k))
        return key, self.distribution[key]


class RunResult(BaseModel):
    """회로 실행 결과"""

    model_config = ConfigDict(frozen=True)

    final_state: StateVector
    measurements: list[ShotResult] = Field(default_factory=list)
