"""
quditlab 명령줄 실험 러너

종료 코드:
    0  성공
    1  잘못된 입력 (라벨, 오류 JSON, 회로 파일, 와이어, 레지스터 크기)
    2  판별 결과 모호 (AmbiguousOutcome)
    3  1단계 분해 실패 (NotFactorizable)
    4  실행은 끝났지만 기대 결과 불충족 (충실도 미달, 오판별, 프리셋 실패)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel, ValidationError

from quditlab import __version__
from quditlab.core.container import Container, get_container, get_settings
from quditlab.core.exceptions import AmbiguousOutcome, InputError, NotFactorizable
from quditlab.schemas.correction import ErrorSpec
from quditlab.schemas.label import GBSLabel
from quditlab.schemas.reports import (
    CorrectionReport,
    DiscriminationReport,
    PresetReport,
    QuditVerifyReport,
    TomographyReport,
)
from quditlab.services.experiment_service import PRESETS
from quditlab.sim.entangled import gbs
from quditlab.utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_AMBIGUOUS = 2
EXIT_NOT_FACTORIZABLE = 3
EXIT_UNMET = 4


def dumps(payload: BaseModel | list[BaseModel]) -> str:
    """정렬된 키, 들여쓰기 2 의 JSON (같은 시드 -> 같은 바이트열)"""
    if isinstance(payload, list):
        data = [item.model_dump(mode="json") for item in payload]
    else:
        data = payload.model_dump(mode="json")
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _parse_wires(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"와이어 목록은 쉼표로 구분한 정수: {text!r}") from e


def _int_at_least(text: str, low: int) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"정수가 아닙니다: {text!r}") from e
    if value < low:
        raise argparse.ArgumentTypeError(f"{low} 이상이어야 합니다: {value}")
    return value


def _positive_int(text: str) -> int:
    return _int_at_least(text, 1)


def _non_negative_int(text: str) -> int:
    return _int_at_least(text, 0)


def _parse_trials(text: str) -> int | None:
    return None if text == "all" else _positive_int(text)


def _parse_steps(text: str) -> int:
    if text == "all":
        return 3
    if text not in ("1", "2", "3"):
        raise argparse.ArgumentTypeError(f"--steps 는 1, 2, 3, all 중 하나: {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    """서브커맨드 파서 생성"""
    parser = argparse.ArgumentParser(
        prog="quditlab",
        description="GBS 족 얽힘 상태의 비파괴 판별, 자동 교정, 토모그래피",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", help="디버그 로그 출력")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discriminate", help="위상/패리티 검사로 GBS 라벨 판별")
    p.add_argument("label", help="d:n:p:q1,... 형식 라벨, 또는 all (벨 4 종 + GHZ 8 종)")
    p.add_argument("--shots", type=_positive_int, default=None)
    p.add_argument("--seed", type=_non_negative_int, default=None)
    p.add_argument("--exact", action="store_true", help="샘플링 없이 정확한 분포 사용")
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("correct", help="오류 주입 후 자동 교정")
    p.add_argument("label", help="저장된(목표) 라벨")
    p.add_argument("--error", type=Path, default=None, help="ErrorSpec JSON 파일")
    p.add_argument("--steps", type=_parse_steps, default=3, help="1|2|3|all")
    p.add_argument("--phase-difference", action="store_true", help="p - p' 진단 기록")
    p.add_argument("--dump-states", action="store_true", help="단계별 상태 출력")
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("tomography", help="파울리 토모그래피로 밀도 행렬 재구성")
    p.add_argument("label", nargs="?", default=None)
    p.add_argument("--circuit", type=Path, default=None, help="|0...0> 에 적용할 회로 파일")
    p.add_argument("--wires", type=_parse_wires, default=None, help="예: 0,1,2")
    p.add_argument("--shots", type=_positive_int, default=None)
    p.add_argument("--seed", type=_non_negative_int, default=None)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("qudit-verify", help="무작위/전수 교정 왕복 검증")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=_parse_trials, default=200, help="N 또는 all")
    p.add_argument("--seed", type=_non_negative_int, default=None)
    p.add_argument("--json", action="store_true", dest="as_json")

    presets = ", ".join(PRESETS)
    p = sub.add_parser(
        "preset",
        help=f"이름 붙은 실험 실행 ({presets})",
        epilog="프리셋:\n" + "\n".join(f"  {k:<26}{v[0]}" for k, v in PRESETS.items()),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("name", help="프리셋 이름, list, 또는 all")
    p.add_argument("--shots", type=_positive_int, default=None)
    p.add_argument("--seed", type=_non_negative_int, default=None)
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("serve", help="HTTP API 서버 실행")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)

    return parser


# ----------------------------------------------------------------------
# 출력
# ----------------------------------------------------------------------


def _print_histogram(title: str, distribution: dict[str, float], counts: dict[str, int] | None):
    print(f"  {title}")
    if counts is not None:
        for key in sorted(counts):
            print(f"    {key}: {counts[key]}")
    else:
        for key in sorted(distribution):
            print(f"    {key}: {distribution[key]:.6f}")


def _print_discrimination(report: DiscriminationReport) -> None:
    mark = "OK" if report.correct else "MISMATCH"
    print(f"{report.target} -> {report.inferred} ({report.ket_name}) [{mark}]")
    phase = report.phase
    _print_histogram(f"위상 검사 -> {phase.outcome}", phase.distribution, phase.counts)
    for i, check in enumerate(report.parity, 1):
        _print_histogram(f"패리티 검사 {i} -> {check.outcome}", check.distribution, check.counts)
    print(f"  검사 후 상태 충실도: {report.post_state_fidelity:.12f}")


def _print_correction(report: CorrectionReport) -> None:
    print(f"목표 {report.target}, 실행 단계 {report.steps_run}")
    for ket, (re, im) in sorted(report.final_state.items()):
        print(f"  |{ket}>: {re:+.6f} {im:+.6f}i")
    if report.phase_diff is not None:
        print(f"  위상 차이 p - p': {report.phase_diff}")
    if report.parity_diag:
        print(f"  패리티 보조 큐디트: {report.parity_diag}")
    print(f"  충실도: {report.fidelity:.12f} ({'PASS' if report.passed else 'FAIL'})")


def _print_tomography(report: TomographyReport) -> None:
    mode = "exact" if report.exact else f"{report.shots} shots, seed {report.seed}"
    print(f"{report.target} wires={report.wires} ({mode})")
    for name, value in sorted(report.metrics.model_dump().items()):
        if value is not None:
            print(f"  {name}: {value}")


def _print_verify(report: QuditVerifyReport) -> None:
    print(
        f"d={report.d}, n={report.n} ({report.mode}): {report.passed}/{report.trials} 통과, "
        f"최소 충실도 {report.min_fidelity:.12f}"
    )
    for failure in report.failures:
        print(f"  실패: {failure}")


def _print_preset(report: PresetReport) -> None:
    print(f"{report.name}: {'PASS' if report.passed else 'FAIL'} - {report.description}")
    for key in sorted(report.observed):
        print(f"  {key}: {report.observed[key]} (기대값: {report.expected.get(key)})")


def _emit(report, as_json: bool, printer) -> None:
    if as_json:
        print(dumps(report))
    elif isinstance(report, list):
        for item in report:
            printer(item)
    else:
        printer(report)


# ----------------------------------------------------------------------
# 서브커맨드
# ----------------------------------------------------------------------


def cmd_discriminate(args: argparse.Namespace, container: Container) -> int:
    service = container.discrimination_service()
    shots = service.resolve_shots(args.shots, args.exact)
    if args.label == "all":
        reports = container.experiment_service().discrimination_table(shots, args.seed)
        _emit(reports, args.as_json, _print_discrimination)
        return EXIT_OK if all(r.correct for r in reports) else EXIT_UNMET
    label = GBSLabel.parse(args.label)
    report = service.report(label, gbs(label), shots, args.seed)
    _emit(report, args.as_json, _print_discrimination)
    return EXIT_OK if report.correct else EXIT_UNMET


def cmd_correct(args: argparse.Namespace, container: Container) -> int:
    service = container.correction_service()
    label = GBSLabel.parse(args.label)
    if args.error is not None:
        err = ErrorSpec.from_json(args.error.read_text(encoding="utf-8"))
    else:
        err = ErrorSpec.none_for(label)
    result = service.run_pipeline(label, err, args.steps, args.phase_difference)
    report = service.report(label, err, result, args.dump_states)
    _emit(report, args.as_json, _print_correction)
    return EXIT_OK if report.passed else EXIT_UNMET


def cmd_tomography(args: argparse.Namespace, container: Container) -> int:
    service = container.tomography_service()
    circuit_text = args.circuit.read_text(encoding="utf-8") if args.circuit else None
    target, state = service.target_state(args.label, circuit_text)
    wires = args.wires if args.wires is not None else list(range(state.wire_count))
    shots = service.resolve_shots(args.shots, args.exact)
    report = service.tomograph(target, state, wires, shots, args.seed)
    _emit(report, args.as_json, _print_tomography)
    return EXIT_OK


def cmd_qudit_verify(args: argparse.Namespace, container: Container) -> int:
    report = container.experiment_service().qudit_verify(args.d, args.n, args.trials, args.seed)
    _emit(report, args.as_json, _print_verify)
    return EXIT_OK if report.failed == 0 else EXIT_UNMET


def cmd_preset(args: argparse.Namespace, container: Container) -> int:
    service = container.experiment_service()
    if args.name == "list":
        for name in service.preset_names():
            print(f"{name}: {service.describe(name)}")
        return EXIT_OK
    names = service.preset_names() if args.name == "all" else [args.name]
    reports = [service.run_preset(name, args.shots, args.seed) for name in names]
    _emit(reports if args.name == "all" else reports[0], args.as_json, _print_preset)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_UNMET


def cmd_serve(args: argparse.Namespace, container: Container) -> int:
    import uvicorn

    settings = get_settings()
    uvicorn.run(
        "quditlab.main:app",
        host=args.host or settings.api_host,
        port=args.port or settings.api_port,
        log_level=settings.log_level.lower(),
    )
    return EXIT_OK


COMMANDS = {
    "discriminate": cmd_discriminate,
    "correct": cmd_correct,
    "tomography": cmd_tomography,
    "qudit-verify": cmd_qudit_verify,
    "preset": cmd_preset,
    "serve": cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    """CLI 진입점. 종료 코드를 반환한다."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 사용법 오류는 2 로 끝나므로 입력 오류 코드로 맞춤
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT

    settings = get_settings()
    setup_logging(
        log_level=settings.log_level,
        log_format=settings.log_format,
        debug=settings.debug or args.debug,
    )
    if getattr(args, "seed", "unset") is None:
        args.seed = settings.default_seed

    container = get_container()
    try:
        return COMMANDS[args.command](args, container)
    except AmbiguousOutcome as e:
        logger.error(f"판별 실패: {e}")
        return EXIT_AMBIGUOUS
    except NotFactorizable as e:
        logger.error(f"분해 실패: {e}")
        return EXIT_NOT_FACTORIZABLE
    except (InputError, ValidationError, OSError) as e:
        logger.error(f"잘못된 입력: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
