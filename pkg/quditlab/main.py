"""
FastAPI 애플리케이션 메인 엔트리포인트
"""

import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from quditlab import __version__
from quditlab.api.endpoints import experiments
from quditlab.core.container import get_container, get_settings
from quditlab.core.exceptions import AmbiguousOutcome, InputError, NotFactorizable, ProtocolError
from quditlab.utils.logger import setup_logging

logger = logging.getLogger(__name__)


def create_app() -> FastAPI:
    """FastAPI 애플리케이션 생성"""
    container = get_container()
    settings = get_settings()

    setup_logging(
        log_level=settings.log_level, log_format=settings.log_format, debug=settings.debug
    )

    # 컨테이너 와이어링
    container.wire(
        modules=[
            "quditlab.api.endpoints.experiments",
            "quditlab.core.dependencies",
        ]
    )

    app = FastAPI(
        title="quditlab API",
        description="GBS 족 얽힘 상태의 비파괴 판별, 자동 교정, 토모그래피 시뮬레이터",
        version=__version__,
        debug=settings.debug,
    )
    app.container = container  # type: ignore[attr-defined]

    # CORS 미들웨어 설정
    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.cors_origin_list,
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # 라우터 등록 (각 엔드포인트에 전체 경로 명시)
    app.include_router(experiments.router, tags=["experiments"])

    # 헬스 체크 엔드포인트
    @app.get("/health")
    async def health_check():
        """헬스 체크"""
        return {"status": "healthy", "version": __version__}

    # 루트 엔드포인트
    @app.get("/")
    async def root():
        """루트 엔드포인트"""
        return {
            "name": "quditlab API",
            "version": __version__,
            "docs": "/docs",
            "health": "/health",
        }

    @app.exception_handler(InputError)
    async def input_error_handler(request: Request, exc: InputError):
        """잘못된 입력 -> 400"""
        logger.warning(f"잘못된 입력: {exc}")
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "error": type(exc).__name__}
        )

    @app.exception_handler(ProtocolError)
    async def protocol_error_handler(request: Request, exc: ProtocolError):
        """판정/분해 실패 -> 409"""
        logger.error(f"프로토콜 실패: {exc}")
        content: dict = {"detail": str(exc), "error": type(exc).__name__}
        if isinstance(exc, AmbiguousOutcome):
            content["share"] = exc.share
        if isinstance(exc, NotFactorizable):
            content["schmidt"] = exc.schmidt
        return JSONResponse(status_code=409, content=content)

    # 글로벌 예외 핸들러
    @app.exception_handler(Exception)
    async def global_exception_handler(request: Request, exc: Exception):
        """글로벌 예외 처리"""
        logger.error(f"처리되지 않은 예외: {exc}", exc_info=True)
        return JSONResponse(status_code=500, content={"detail": "내부 서버 오류가 발생했습니다."})

    return app


# 애플리케이션 인스턴스
app = create_app()


if __name__ == "__main__":
    import uvicorn

    settings = get_settings()
    uvicorn.run(
        "quditlab.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug,
        log_level=settings.log_level.lower(),
    )
