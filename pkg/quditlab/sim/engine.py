"""
회로 실행 엔진

게이트 적용(tensordot + moveaxis), 본(Born) 규칙 측정, 시드 고정 샷 샘플링.
측정 마커는 기본적으로 상태를 붕괴시키지 않는다 (비파괴 판별용).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import reduce

import numpy as np

from quditlab.core.exceptions import DimensionMismatch, InvalidSampling, InvalidWires
from quditlab.schemas.circuit import (
    Circuit,
    CheckOutcome,
    GateStep,
    RunResult,
    ShotResult,
    check_wires,
    outcome_key,
    parse_outcome_key,
)
from quditlab.schemas.gate import GateMatrix
from quditlab.schemas.state import StateVector
from quditlab.sim.tensor import project_out

logger = logging.getLogger(__name__)

# 확률이 이보다 작은 측정 결과는 분포에서 제외
PROB_FLOOR = 1e-14


def derive_seed(root: int, *keys: int) -> int:
    """(루트 시드, 키...) 로부터 자식 시드 생성"""
    if int(root) < 0:
        raise InvalidSampling(f"seed={root} < 0")
    seq = np.random.SeedSequence(int(root), spawn_key=tuple(int(k) for k in keys))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _apply_tensor(psi: np.ndarray, gate: GateMatrix, wires: Sequence[int]) -> np.ndarray:
    """앞쪽 n 개 축이 와이어인 텐서에 게이트 적용 (뒤쪽 배치 축 허용)"""
    k = len(wires)
    g = np.asarray(gate.matrix).reshape((gate.d,) * (2 * k))
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), list(wires)))
    return np.moveaxis(out, list(range(k)), list(wires))


def apply(state: StateVector, gate: GateMatrix, wires: Sequence[int]) -> StateVector:
    """게이트를 지정 와이어에 적용 (나머지 와이어는 항등)

    Raises:
        DimensionMismatch: 게이트 d 와 레지스터 d 가 다름
        InvalidWires: 와이어 개수가 arity 와 다르거나 범위 밖
    """
    if gate.d != state.dim_per_wire:
        raise DimensionMismatch(f"{gate.name}: 게이트 d={gate.d}, 레지스터 d={state.dim_per_wire}")
    wires = check_wires(wires, state.wire_count)
    if len(wires) != gate.arity:
        raise InvalidWires(f"{gate.name}: arity {gate.arity} != 와이어 수 {len(wires)}")
    out = _apply_tensor(state.as_tensor(), gate, wires)
    return StateVector(
        dim_per_wire=state.dim_per_wire, wire_count=state.wire_count, amplitudes=out.reshape(-1)
    )


def marginal(state: StateVector, wires: Sequence[int]) -> np.ndarray:
    """wires 순서대로 정렬된 주변 확률 텐서"""
    wires = check_wires(wires, state.wire_count)
    probs = np.abs(state.as_tensor()) ** 2
    others = tuple(w for w in range(state.wire_count) if w not in wires)
    reduced = probs.sum(axis=others) if others else probs
    # sum 후 남은 축은 오름차순이므로 wires 순서로 재배열
    order = sorted(wires)
    return np.transpose(reduced, [order.index(w) for w in wires])


def distribution(state: StateVector, wires: Sequence[int]) -> dict[str, float]:
    """측정 결과 키 -> 확률"""
    d = state.dim_per_wire
    probs = marginal(state, wires)
    return {
        outcome_key(idx, d): float(p)
        for idx, p in np.ndenumerate(probs)
        if p > PROB_FLOOR
    }


def collapse(state: StateVector, wires: Sequence[int], digits: Sequence[int]) -> StateVector:
    """wires 를 digits 로 사영하고 재정규화 (와이어는 유지)"""
    wires = check_wires(wires, state.wire_count)
    psi = state.as_tensor()
    mask = np.zeros(state.shape, dtype=bool)
    index: list[int | slice] = [slice(None)] * state.wire_count
    for w, x in zip(wires, digits, strict=True):
        index[w] = int(x)
    mask[tuple(index)] = True
    branch = np.where(mask, psi, 0).reshape(-1)
    norm = float(np.linalg.norm(branch))
    if norm == 0.0:
        raise InvalidWires(f"확률 0 인 결과 {list(digits)} 로 사영할 수 없습니다")
    return StateVector(
        dim_per_wire=state.dim_per_wire, wire_count=state.wire_count, amplitudes=branch / norm
    )


def sample(state: StateVector, wires: Sequence[int], shots: int, seed: int) -> ShotResult:
    """본 분포에서 다항 샘플링 (같은 시드면 같은 결과)"""
    if shots < 1:
        raise InvalidSampling(f"shots={shots} < 1")
    if seed < 0:
        raise InvalidSampling(f"seed={seed} < 0")
    d = state.dim_per_wire
    probs = marginal(state, wires).reshape(-1)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs)
    shape = (d,) * len(check_wires(wires, state.wire_count))
    counts = {
        outcome_key(np.unravel_index(int(i), shape), d): int(c)
        for i, c in enumerate(draws)
        if c > 0
    }
    return ShotResult(counts=counts, shots=shots, seed=seed)


def sample_batched(
    state: StateVector,
    wires: Sequence[int],
    shots: int,
    seed: int,
    batches: int = 4,
    workers: int | None = None,
) -> ShotResult:
    """샷을 배치로 나눠 병렬 샘플링 후 카운트 합산

    배치 i 는 derive_seed(seed, i) 를 쓰므로 workers 수와 무관하게 결과가 같다.
    """
    batches = max(1, min(batches, shots))
    sizes = [shots // batches + (1 if i < shots % batches else 0) for i in range(batches)]
    with ThreadPoolExecutor(max_workers=workers or batches) as pool:
        parts = list(
            pool.map(
                lambda item: sample(state, wires, item[1], derive_seed(seed, item[0])),
                enumerate(sizes),
            )
        )
    merged = reduce(lambda a, b: a.merge(b), parts)
    return ShotResult(counts=dict(sorted(merged.counts.items())), shots=shots, seed=seed)


def measure_exact(
    state: StateVector, wires: Sequence[int], drop: bool = False
) -> CheckOutcome:
    """정확한 측정 분포와 최빈 결과로 붕괴된 상태

    Args:
        drop: True 이면 측정한 와이어를 제거한 나머지 상태를 post_state 로 반환
    """
    return measure_check(state, wires, shots=None, seed=0, drop=drop)


def measure_check(
    state: StateVector,
    wires: Sequence[int],
    shots: int | None,
    seed: int,
    drop: bool = False,
) -> CheckOutcome:
    """보조 큐디트 측정 기록 생성

    shots 가 None 이면 정확한 분포만, 아니면 샘플 히스토그램까지 기록한다.
    post_state 는 (샘플이 있으면 샘플의) 최빈 결과로 사영한 상태이다.
    """
    wires = check_wires(wires, state.wire_count)
    dist = distribution(state, wires)
    total = sum(dist.values())
    dist = {k: v / total for k, v in dist.items()}
    sampled = sample(state, wires, shots, seed) if shots is not None else None
    draft = CheckOutcome(wires=wires, distribution=dist, sampled=sampled, post_state=state)
    digits = parse_outcome_key(draft.outcome, state.dim_per_wire)
    if drop:
        post = project_out(state, wires, digits)
    else:
        post = collapse(state, wires, digits)
    return draft.model_copy(update={"post_state": post})


def run(
    circuit: Circuit,
    initial: StateVector,
    shots: int = 8192,
    seed: int = 0,
    collapse_on_measure: bool = False,
) -> RunResult:
    """회로를 순서대로 실행

    측정 마커 m 은 derive_seed(seed, m) 로 샘플링한다. collapse_on_measure 가
    False 이면 정확한 상태는 측정으로 바뀌지 않는다.
    """
    if (initial.dim_per_wire, initial.wire_count) != (circuit.d, circuit.n):
        raise DimensionMismatch(
            f"초기 상태 (d={initial.dim_per_wire}, n={initial.wire_count}) "
            f"!= 회로 (d={circuit.d}, n={circuit.n})"
        )
    state = initial
    results: list[ShotResult] = []
    for step in circuit.steps:
        if isinstance(step, GateStep):
            state = apply(state, step.gate, step.wires)
            continue
        marker = len(results)
        shot = sample(state, step.wires, shots, derive_seed(seed, marker))
        results.append(shot)
        logger.debug(f"측정 마커 {marker} {list(step.wires)}: {shot.counts}")
        if collapse_on_measure:
            key, _ = shot.modal()
            state = collapse(state, step.wires, parse_outcome_key(key, circuit.d))
    return RunResult(final_state=state, measurements=results)


def evolve(circuit: Circuit, initial: StateVector) -> StateVector:
    """게이트 단계만 적용한 최종 상태 (측정 마커 무시)"""
    if (initial.dim_per_wire, initial.wire_count) != (circuit.d, circuit.n):
        raise DimensionMismatch(
            f"초기 상태 (d={initial.dim_per_wire}, n={initial.wire_count}) "
            f"!= 회로 (d={circuit.d}, n={circuit.n})"
        )
    psi = initial.as_tensor()
    for step in circuit.steps:
        if isinstance(step, GateStep):
            psi = _apply_tensor(psi, step.gate, step.wires)
    return StateVector(
        dim_per_wire=circuit.d, wire_count=circuit.n, amplitudes=psi.reshape(-1)
    )


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """측정 마커를 무시한 회로 전체의 d^n x d^n 유니터리"""
    size = circuit.d**circuit.n
    block = np.eye(size, dtype=complex).reshape((circuit.d,) * circuit.n + (size,))
    for step in circuit.steps:
        if isinstance(step, GateStep):
            block = _apply_tensor(block, step.gate, step.wires)
    return block.reshape(size, size)
