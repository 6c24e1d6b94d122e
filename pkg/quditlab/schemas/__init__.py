# Pydantic schemas module
from quditlab.schemas.circuit import (
    CheckOutcome,
    Circuit,
    GateStep,
    MeasureStep,
    RunResult,
    ShotResult,
)
from quditlab.schemas.correction import CorrectionRecord, ErrorSpec
from quditlab.schemas.gate import GateMatrix
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import (
    CheckReport,
    CorrectionReport,
    DiscriminationReport,
    ParityTableCell,
    PresetReport,
    QuditVerifyReport,
    TomographyReport,
)
from quditlab.schemas.requests import (
    CorrectRequest,
    DiscriminateRequest,
    PresetInfo,
    PresetRequest,
    TomographyRequest,
)
from quditlab.schemas.state import DensityMatrix, MatrixPayload, StateVector, VectorPayload
from quditlab.schemas.tomography import Metrics, PauliString
