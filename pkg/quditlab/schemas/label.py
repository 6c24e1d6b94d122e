"""
일반화 최대 얽힘 상태(GBS) 라벨 스키마
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from quditlab.core.exceptions import InvalidLabel


class GBSLabel(BaseModel):
    """(d, n, 위상 지수 p, 패리티 오프셋 q_1..q_{n-1})

    q_i 는 와이어 0 에 대한 와이어 i 의 mod-d 이동량이다.
    """

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=2)
    n: int = Field(..., ge=2)
    p: int
    q: tuple[int, ...]

    @model_validator(mode="after")
    def check_ranges(self) -> GBSLabel:
        """모든 지수가 [0, d) 안에 있는지 검증"""
        if len(self.q) != self.n - 1:
            raise ValueError(f"패리티 오프셋 개수 {len(self.q)} != n-1 = {self.n - 1}")
        if not 0 <= self.p < self.d:
            raise ValueError(f"위상 지수 p={self.p} 는 [0, {self.d}) 밖입니다")
        bad = [x for x in self.q if not 0 <= x < self.d]
        if bad:
            raise ValueError(f"패리티 오프셋 {bad} 는 [0, {self.d}) 밖입니다")
        return self

    @classmethod
    def make(cls, d: int, n: int, p: int, q) -> GBSLabel:
        """검증 실패 시 InvalidLabel 을 던지는 생성자"""
        try:
            return cls(d=d, n=n, p=p, q=tuple(q))
        except ValidationError as e:
            raise InvalidLabel(_first_error(e)) from e

    @classmethod
    def parse(cls, text: str) -> GBSLabel:
        """'d:n:p:q1,q2,...' 형식 파싱 (예: '2:3:1:1,0')"""
        parts = text.strip().split(":")
        if len(parts) != 4:
            raise InvalidLabel(f"라벨 형식은 d:n:p:q1,... 이어야 합니다: {text!r}")
        try:
            d, n, p = int(parts[0]), int(parts[1]), int(parts[2])
            q = tuple(int(x) for x in parts[3].split(",") if x.strip() != "")
        except ValueError as e:
            raise InvalidLabel(f"정수가 아닌 라벨 성분: {text!r}") from e
        return cls.make(d, n, p, q)

    def __str__(self) -> str:
        return f"{self.d}:{self.n}:{self.p}:{','.join(str(x) for x in self.q)}"

    def relative_parities(self) -> tuple[int, ...]:
        """패리티 검사가 돌려주는 q_i - q_{i-1} mod d (q_0 = 0)"""
        prev = 0
        result = []
        for x in self.q:
            result.append((x - prev) % self.d)
            prev = x
        return tuple(result)

    def ket_string(self) -> str:
        """첫 번째 가지의 ket 문자열 (j=0): '0 q_1 ... q_{n-1}'"""
        sep = "" if self.d <= 10 else ","
        return sep.join(str(x) for x in (0, *self.q))

    def ket_name(self) -> str:
        """d=2 표 이름 (예: 'Ψ-_010'); d>2 이면 'Ψ[p]_q' 형식"""
        if self.d == 2:
            sign = "+" if self.p == 0 else "-"
            return f"Ψ{sign}_{self.ket_string()}"
        return f"Ψ[{self.p}]_{self.ket_string()}"


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    return str(err.get("msg", e))
