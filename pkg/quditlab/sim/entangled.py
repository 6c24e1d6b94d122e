"""
벨 / GHZ / 일반화 n-큐디트 최대 얽힘 상태 생성과 분류
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from itertools import product

import numpy as np

from quditlab.core.exceptions import InvalidLabel, OutOfRange
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.state import StateVector


def branch_state(d: int, q: Sequence[int], phases: Sequence[complex]) -> StateVector:
    """(1/√d) Σ_j phases[j] |j, j+q_1, ..., j+q_{n-1}>  (phases 는 단위 복소수)"""
    n = len(q) + 1
    shape = (d,) * n
    amps = np.zeros(d**n, dtype=complex)
    for j in range(d):
        digits = (j, *((j + x) % d for x in q))
        amps[np.ravel_multi_index(digits, shape)] = phases[j] / np.sqrt(d)
    return StateVector(dim_per_wire=d, wire_count=n, amplitudes=amps)


def gbs(label: GBSLabel) -> StateVector:
    """GBS(p, q) = (1/√d) Σ_j e^{2πijp/d} |j>|j+q_1>...|j+q_{n-1}>"""
    d = label.d
    phases = np.exp(2j * np.pi * np.arange(d) * label.p / d)
    return branch_state(d, label.q, phases)


def bell(phase_bit: int, parity_bit: int) -> StateVector:
    """2-큐비트 벨 상태 (phase_bit: +/-, parity_bit: 두 번째 큐비트 뒤집힘)"""
    return gbs(_bit_label(2, phase_bit, (parity_bit,)))


def ghz(sign: int | str, b1: int, b2: int) -> StateVector:
    """3-큐비트 GHZ 상태 (|0 b1 b2> ± |1 b̄1 b̄2>)/√2"""
    if isinstance(sign, str):
        if sign not in ("+", "-"):
            raise InvalidLabel(f"부호는 '+' 또는 '-' 이어야 합니다: {sign!r}")
        sign = 0 if sign == "+" else 1
    return gbs(_bit_label(3, sign, (b1, b2)))


def _bit_label(n: int, p: int, q: tuple[int, ...]) -> GBSLabel:
    if any(x not in (0, 1) for x in (p, *q)):
        raise InvalidLabel(f"비트 값은 0 또는 1 이어야 합니다: p={p}, q={q}")
    return GBSLabel.make(2, n, p, q)


def classify(
    phase_outcome: int, parity_outcomes: Sequence[int], d: int, n: int
) -> GBSLabel:
    """판별 결과를 라벨로 역변환

    위상 결과는 p, 상대 패리티 결과는 누적합으로 q_i = q_{i-1} + r_i mod d (q_0 = 0).
    """
    outcomes = [phase_outcome, *parity_outcomes]
    bad = [x for x in outcomes if not 0 <= x < d]
    if bad:
        raise OutOfRange(f"측정 결과 {bad} 는 [0, {d}) 밖입니다")
    if len(parity_outcomes) != n - 1:
        raise OutOfRange(f"패리티 결과 개수 {len(parity_outcomes)} != n-1 = {n - 1}")
    q = tuple(int(x) % d for x in np.cumsum(parity_outcomes, dtype=int))
    return GBSLabel.make(d, n, phase_outcome, q)


def all_labels(d: int, n: int) -> Iterator[GBSLabel]:
    """(d, n) GBS 족의 d^n 개 라벨 (p 다음 q 사전순)"""
    for p, *q in product(range(d), repeat=n):
        yield GBSLabel(d=d, n=n, p=p, q=tuple(q))
