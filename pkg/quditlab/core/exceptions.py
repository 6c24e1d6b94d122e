"""
커스텀 예외 정의
"""


class QuditLabError(Exception):
    """quditlab 최상위 예외"""


class InputError(QuditLabError, ValueError):
    """잘못된 입력 (CLI 종료 코드 1, HTTP 400)"""


class ProtocolError(QuditLabError):
    """프로토콜 실행 중 판정/분해 실패"""


class LengthMismatch(InputError):
    """진폭 길이가 d^n 과 다름"""


class NotNormalized(InputError):
    """상태 벡터 노름이 1 이 아님"""


class DimensionMismatch(InputError):
    """큐디트 차원 또는 행렬 크기 불일치"""


class InvalidWires(InputError):
    """와이어 인덱스 오류 (중복, 범위 초과, 빈 목록)"""


class InvalidDimension(InputError):
    """d < 2"""


class UnknownGate(InputError):
    """지원하지 않는 게이트 이름"""


class InvalidLabel(InputError):
    """GBS 라벨 파싱/범위 오류"""


class OutOfRange(InputError):
    """측정 결과 값이 [0, d) 범위를 벗어남"""


class UnsupportedDimension(InputError):
    """큐비트(d=2) 전용 연산에 d != 2 입력"""


class CircuitParseError(InputError):
    """회로 텍스트 파일 문법 오류"""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        prefix = f"{line_no}행: " if line_no is not None else ""
        super().__init__(f"{prefix}{message}")


class UnknownPreset(InputError):
    """등록되지 않은 프리셋 이름"""


class RegisterTooLarge(InputError):
    """d^(n+1) 이 허용 진폭 수를 초과"""


class InvalidSampling(InputError):
    """샷 수 < 1 또는 음수 시드"""


class AmbiguousOutcome(ProtocolError):
    """판정 임계값을 넘는 단일 측정 결과가 없음"""

    def __init__(self, message: str, share: float | None = None):
        self.share = share
        super().__init__(message)


class NotFactorizable(ProtocolError):
    """시스템-보조 큐디트 상태가 곱 상태로 분해되지 않음"""

    def __init__(self, message: str, schmidt: float | None = None):
        self.schmidt = schmidt
        super().__init__(message)
