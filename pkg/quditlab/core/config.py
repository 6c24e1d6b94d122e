"""
환경 설정 관리
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """애플리케이션 설정"""

    # 샘플링
    default_shots: int = Field(default=8192, ge=1, alias="SHOTS")
    default_seed: int = Field(default=7, ge=0, alias="SEED")
    decision_threshold: float = Field(default=0.9, gt=0.5, le=1.0, alias="DECISION_THRESHOLD")

    # 수치 허용 오차
    exact_tol: float = Field(default=1e-10, gt=0, alias="EXACT_TOL")
    factorization_tol: float = Field(default=1e-8, gt=0, alias="FACTORIZATION_TOL")
    correction_fidelity_tol: float = Field(default=1e-9, gt=0, alias="CORRECTION_FIDELITY_TOL")

    # 레지스터 크기 제한 (d^(n+1))
    max_amplitudes: int = Field(default=1_000_000, ge=4, alias="MAX_AMPLITUDES")

    # 토모그래피
    tomography_max_wires: int = Field(default=3, ge=1, alias="TOMOGRAPHY_MAX_WIRES")
    tomography_workers: int = Field(default=4, ge=1, alias="TOMOGRAPHY_WORKERS")

    # HTTP API
    api_host: str = Field(default="127.0.0.1", alias="API_HOST")
    api_port: int = Field(default=8432, alias="API_PORT")
    cors_origins: str = Field(default="http://localhost:3432", alias="CORS_ORIGINS")

    # Logging
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    log_format: str = Field(default="text", alias="LOG_FORMAT")
    debug: bool = Field(default=False, alias="DEBUG")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        populate_by_name=True,
        extra="ignore",  # 추가 환경 변수 무시
    )

    @field_validator("log_format")
    @classmethod
    def check_log_format(cls, v: str) -> str:
        """로그 포맷 검증"""
        v = v.lower()
        if v not in ("text", "json"):
            raise ValueError("LOG_FORMAT 은 text 또는 json 이어야 합니다")
        return v

    @property
    def cors_origin_list(self) -> list[str]:
        """쉼표로 구분된 CORS origins 목록"""
        return [item.strip() for item in self.cors_origins.split(",") if item.strip()]
