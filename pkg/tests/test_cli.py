"""Command-line surface: exit codes, determinism, round trips."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from liftcert.cli import main
from liftcert.covering import (
    certificate_from_json,
    explicit_covering_d2,
    family_from_json,
    recursive_covering,
)


def run_cli(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestUdisj:
    def test_json_report(self, capsys):
        code, out = run_cli(capsys, "udisj", "--n", "3")
        assert code == 0
        obj = json.loads(out)
        assert obj["val"] == 27 == obj["expected_val"]
        assert len(obj["matrix"]["entries"]) > 0

    def test_csv_format(self, capsys):
        code, out = run_cli(capsys, "udisj", "--n", "1", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == ",0,1"

    def test_invalid_n_exits_2(self, capsys):
        assert run_cli(capsys, "udisj", "--n", "0")[0] == 2


class TestCoveringCommands:
    def test_build_and_verify_recursive(self, tmp_path, capsys):
        fam_file = tmp_path / "fam.json"
        code, _ = run_cli(capsys, "covering", "build", "--d", "3",
                          "--out", str(fam_file))
        assert code == 0
        assert family_from_json(fam_file.read_text()) == recursive_covering(3)

        code, out = run_cli(capsys, "covering", "verify", "--family", str(fam_file))
        assert code == 0
        obj = json.loads(out)
        assert obj["passed"] and len(obj["certificates"]) == 8
        for cert_obj in obj["certificates"].values():
            assert len(cert_obj["assignment"]) == 26

    def test_emitted_certificates_revalidate(self, tmp_path, capsys):
        fam_file = tmp_path / "fam.json"
        run_cli(capsys, "covering", "build", "--d", "2", "--out", str(fam_file))
        code, out = run_cli(capsys, "covering", "verify", "--family", str(fam_file))
        assert code == 0
        fam = family_from_json(fam_file.read_text())
        for cert_obj in json.loads(out)["certificates"].values():
            certificate_from_json(json.dumps(cert_obj), fam)

    def test_explicit_d2_fails_maximal_with_pigeonhole_report(self, tmp_path, capsys):
        fam_file = tmp_path / "exp.json"
        run_cli(capsys, "covering", "build", "--d", "2", "--explicit-d2",
                "--out", str(fam_file))
        assert family_from_json(fam_file.read_text()) == explicit_covering_d2()
        code, out = run_cli(capsys, "covering", "verify", "--family", str(fam_file),
                            "--mode", "maximal")
        assert code == 1
        obj = json.loads(out)
        assert not obj["passed"]
        assert all(f["support_size"] == 8 and f["k"] == 7 for f in obj["failures"])

    def test_explicit_d2_passes_patterns(self, tmp_path, capsys):
        fam_file = tmp_path / "exp.json"
        run_cli(capsys, "covering", "build", "--d", "2", "--explicit-d2",
                "--out", str(fam_file))
        code, out = run_cli(capsys, "covering", "verify", "--family", str(fam_file),
                            "--mode", "patterns-d2")
        assert code == 0
        assert json.loads(out)["passed"]

    def test_missing_family_file_exits_2(self, capsys):
        assert run_cli(capsys, "covering", "verify",
                       "--family", "/nonexistent.json")[0] == 2


class TestAtomSample:
    def test_pattern_check_passes(self, capsys):
        code, out = run_cli(capsys, "atom", "sample", "--n", "2", "--d", "2",
                            "--trials", "50", "--check", "patterns")
        assert code == 0
        obj = json.loads(out)
        assert obj["passes"] == 50 and obj["falsifier"] is None
        assert obj["max_val"] <= 7

    def test_antidiagonal_check_passes(self, capsys):
        code, out = run_cli(capsys, "atom", "sample", "--n", "2", "--d", "2",
                            "--trials", "50", "--check", "antidiagonal")
        assert code == 0
        assert json.loads(out)["falsifier"] is None

    def test_induction_check_passes(self, capsys):
        code, out = run_cli(capsys, "atom", "sample", "--n", "3", "--d", "2",
                            "--trials", "20", "--check", "induction")
        assert code == 0
        assert json.loads(out)["falsifier"] is None

    def test_pattern_check_needs_n2_d2(self, capsys):
        assert run_cli(capsys, "atom", "sample", "--n", "3", "--d", "2",
                       "--trials", "1", "--check", "patterns")[0] == 2

    def test_antidiagonal_needs_square(self, capsys):
        assert run_cli(capsys, "atom", "sample", "--n", "3", "--d", "2",
                       "--trials", "1", "--check", "antidiagonal")[0] == 2

    def test_seed_in_report(self, capsys):
        _, out = run_cli(capsys, "atom", "sample", "--n", "2", "--d", "2",
                         "--trials", "5", "--seed", "17")
        assert json.loads(out)["seed"] == 17


class TestBound:
    def test_worked_example(self, capsys):
        code, out = run_cli(capsys, "bound", "--n", "4", "--d", "1")
        assert code == 0
        obj = json.loads(out)
        assert obj["lift_lower_exact"] == "81/16"

    def test_text_format(self, capsys):
        code, out = run_cli(capsys, "bound", "--n", "6", "--d", "2",
                            "--format", "text")
        assert code == 0
        assert "refined" in out

    def test_oversized_k_rejected(self, capsys):
        assert run_cli(capsys, "bound", "--n", "4", "--d", "1", "--k", "5")[0] == 2


class TestInductionCommand:
    def test_default_family(self, capsys):
        code, out = run_cli(capsys, "induction", "--n", "4", "--d", "2",
                            "--trials", "10")
        assert code == 0
        obj = json.loads(out)
        assert obj["family"] == "recursive-d2" and obj["falsifier"] is None

    def test_family_width_mismatch_exits_2(self, tmp_path, capsys):
        fam_file = tmp_path / "fam.json"
        run_cli(capsys, "covering", "build", "--d", "3", "--out", str(fam_file))
        assert run_cli(capsys, "induction", "--n", "4", "--d", "2",
                       "--trials", "1", "--family", str(fam_file))[0] == 2


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["udisj", "--n", "2"],
            ["bound", "--n", "7", "--d", "2"],
            ["atom", "sample", "--n", "2", "--d", "2", "--trials", "25",
             "--seed", "3"],
            ["induction", "--n", "3", "--d", "1", "--trials", "10"],
        ],
    )
    def test_byte_identical_reruns(self, capsys, argv):
        _, first = run_cli(capsys, *argv)
        _, second = run_cli(capsys, *argv)
        assert first == second

    def test_out_dir_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("LIFTCERT_OUT_DIR", str(tmp_path))
        code, _ = run_cli(capsys, "covering", "build", "--d", "1",
                          "--out", "fam.json")
        assert code == 0
        assert (tmp_path / "fam.json").exists()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "liftcert", "bound", "--n", "2", "--d", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["lift_lower_exact"] == "9/8"
