"""
서비스 레이어 모듈
"""

from quditlab.services.correction_service import CorrectionService
from quditlab.services.discrimination_service import DiscriminationService
from quditlab.services.experiment_service import ExperimentService
from quditlab.services.tomography_service import TomographyService

__all__ = [
    "DiscriminationService",
    "CorrectionService",
    "TomographyService",
    "ExperimentService",
]
