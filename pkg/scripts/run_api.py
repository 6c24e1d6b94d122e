#!/usr/bin/env python
"""
API 서버 실행 스크립트
"""

import uvicorn

from quditlab.core.container import get_settings

if __name__ == "__main__":
    settings = get_settings()
    uvicorn.run(
        "quditlab.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=True,
    )
