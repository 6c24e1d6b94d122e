"""
cli.py 명령줄 러너 테스트
"""

import json
from unittest.mock import Mock

import pytest
from dependency_injector import providers

from quditlab.cli import (
    EXIT_AMBIGUOUS,
    EXIT_INPUT,
    EXIT_NOT_FACTORIZABLE,
    EXIT_OK,
    EXIT_UNMET,
    main,
)
from quditlab.core.container import get_container
from quditlab.core.exceptions import AmbiguousOutcome, NotFactorizable
from quditlab.services.experiment_service import PRESETS

pytestmark = pytest.mark.integration


@pytest.fixture
def error_file(tmp_path):
    """|00> + e^{iπ/8}|11> 오류 JSON 파일"""
    path = tmp_path / "error.json"
    path.write_text(json.dumps({"deltas": [0.0, 0.39269908169872414], "p_err": 0, "q_err": [0]}))
    return path


class TestDiscriminateCommand:
    """discriminate 서브커맨드 테스트"""

    def test_human_output(self, capsys):
        assert main(["discriminate", "2:3:1:1,0", "--exact"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Ψ-_010" in out
        assert "[OK]" in out

    def test_json_is_deterministic(self, capsys):
        """같은 시드 -> 같은 바이트열"""
        argv = ["discriminate", "2:3:0:1,1", "--shots", "2048", "--seed", "3", "--json"]

        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        second = capsys.readouterr().out

        assert first == second
        assert json.loads(first)["inferred"] == "2:3:0:1,1"

    def test_default_seed(self, capsys):
        assert main(["discriminate", "2:2:1:0", "--shots", "100", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["seed"] == 7

    def test_all(self, capsys):
        assert main(["discriminate", "all", "--exact", "--json"]) == EXIT_OK
        reports = json.loads(capsys.readouterr().out)
        assert len(reports) == 12
        assert all(r["correct"] for r in reports)

    def test_invalid_label(self):
        assert main(["discriminate", "2:3:9:0,0"]) == EXIT_INPUT

    def test_ambiguous(self):
        """판정 실패 -> 종료 코드 2"""
        service = Mock()
        service.report.side_effect = AmbiguousOutcome("모호함", share=0.5)
        get_container().discrimination_service.override(providers.Object(service))

        assert main(["discriminate", "2:2:0:0"]) == EXIT_AMBIGUOUS


class TestCorrectCommand:
    """correct 서브커맨드 테스트"""

    def test_bell_correction(self, capsys, error_file):
        code = main(["correct", "2:2:1:1", "--error", str(error_file), "--json"])

        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert data["parity_diag"] == "1"

    def test_partial_steps_unmet(self, error_file):
        """1단계만으로는 목표에 도달하지 못함 -> 종료 코드 4"""
        argv = ["correct", "2:2:1:1", "--error", str(error_file), "--steps", "1"]
        assert main(argv) == EXIT_UNMET

    def test_phase_difference(self, capsys):
        assert main(["correct", "2:3:1:1,0", "--phase-difference", "--dump-states", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["phase_diff"] == 0
        assert "parity_corrected" in data["states"]

    def test_missing_error_file(self, tmp_path):
        assert main(["correct", "2:2:1:1", "--error", str(tmp_path / "none.json")]) == EXIT_INPUT

    def test_malformed_error_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["correct", "2:2:1:1", "--error", str(path)]) == EXIT_INPUT

    def test_bad_steps(self):
        assert main(["correct", "2:2:1:1", "--steps", "5"]) == EXIT_INPUT

    def test_not_factorizable(self):
        """1단계 분해 실패 -> 종료 코드 3"""
        service = Mock()
        service.run_pipeline.side_effect = NotFactorizable("얽힘", schmidt=0.7)
        get_container().correction_service.override(providers.Object(service))

        assert main(["correct", "2:2:1:1"]) == EXIT_NOT_FACTORIZABLE


class TestTomographyCommand:
    """tomography 서브커맨드 테스트"""

    def test_label(self, capsys):
        assert main(["tomography", "2:2:1:1", "--exact", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["metrics"]["fidelity_pure"] == pytest.approx(1.0)

    def test_circuit_file(self, capsys, tmp_path):
        path = tmp_path / "bell.qc"
        path.write_text("REGISTER 2 2\nH 0\nCNOT 0 1\n")

        assert main(["tomography", "--circuit", str(path), "--shots", "1024"]) == EXIT_OK
        assert "fidelity_pure" in capsys.readouterr().out

    def test_bad_wire(self):
        assert main(["tomography", "2:2:1:1", "--wires", "9"]) == EXIT_INPUT

    def test_circuit_parse_error(self, tmp_path):
        path = tmp_path / "bad.qc"
        path.write_text("H 0\n")
        assert main(["tomography", "--circuit", str(path)]) == EXIT_INPUT


class TestQuditVerifyCommand:
    """qudit-verify 서브커맨드 테스트"""

    def test_random(self, capsys):
        assert main(["qudit-verify", "--d", "3", "--n", "2", "--trials", "20", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] == 20

    def test_exhaustive(self, capsys):
        assert main(["qudit-verify", "--d", "2", "--n", "2", "--trials", "all"]) == EXIT_OK
        assert "256/256" in capsys.readouterr().out

    def test_register_too_large(self):
        assert main(["qudit-verify", "--d", "10", "--n", "7"]) == EXIT_INPUT


class TestPresetCommand:
    """preset 서브커맨드 테스트"""

    def test_list(self, capsys):
        assert main(["preset", "list"]) == EXIT_OK
        out = capsys.readouterr().out
        assert all(name in out for name in PRESETS)

    def test_run(self, capsys):
        assert main(["preset", "ghz-bit-flip", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_unknown(self):
        assert main(["preset", "nope"]) == EXIT_INPUT


class TestParser:
    """공통 옵션"""

    def test_version(self, capsys):
        assert main(["--version"]) == EXIT_OK
        assert "quditlab" in capsys.readouterr().out

    def test_missing_command(self):
        assert main([]) == EXIT_INPUT

    def test_logs_go_to_stderr(self, capsys):
        main(["--debug", "discriminate", "2:2:0:0", "--exact", "--json"])
        captured = capsys.readouterr()
        json.loads(captured.out)
        assert "판별 결과" in captured.err

    @pytest.mark.parametrize(
        "extra",
        [
            ["--shots", "0"],
            ["--shots", "-5"],
            ["--seed", "-1"],
            ["--shots", "ten"],
        ],
    )
    def test_bad_sampling_options(self, extra):
        """샷 수 < 1, 음수 시드는 기본값으로 바꾸지 않고 입력 오류"""
        assert main(["discriminate", "2:2:0:0", *extra]) == EXIT_INPUT
        assert main(["tomography", "2:2:1:1", *extra]) == EXIT_INPUT
        assert main(["preset", "ghz-bit-flip", *extra]) == EXIT_INPUT

    def test_preset_help_lists_every_preset(self, capsys):
        """preset --help 에 모든 프리셋 이름과 설명"""
        assert main(["preset", "--help"]) == EXIT_OK
        out = capsys.readouterr().out
        for name, (description, _) in PRESETS.items():
            assert name in out
            assert description in out
