import json

import numpy as np
import pytest

from thetachar.aronhold import load_aronhold_cache
from thetachar.cli import main
from thetachar.formats import format_system, sample_tau, save_tau
from thetachar import RiemannMatrix, reference_fundamental_system


@pytest.fixture(scope="module")
def tau_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("tau") / "tau.json"
    save_tau(sample_tau(1), path)
    return str(path)


@pytest.fixture(scope="module")
def bad_tau_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("tau") / "diag.json"
    save_tau(RiemannMatrix(1j * np.eye(3)), path)
    return str(path)


def test_chars_counts(capsys):
    assert main(["chars", "--genus", "2"]) == 0
    out = capsys.readouterr().out
    assert "genus 2: 10 even, 6 odd" in out
    assert main(["chars", "--genus", "1"]) == 0
    assert "genus 1: 3 even, 1 odd" in capsys.readouterr().out


def test_chars_genus_guard(capsys):
    assert main(["chars", "--genus", "6"]) == 2


def test_aronhold_writes_valid_cache(tmp_path, capsys):
    out = tmp_path / "sets.json"
    assert main(["aronhold", "--out", str(out)]) == 0
    assert "288" in capsys.readouterr().out
    sets = load_aronhold_cache(out)
    assert len(sets) == 288


def test_jacobi_reference_passes(tau_file, tmp_path, capsys):
    report = tmp_path / "jacobi.json"
    code = main(["jacobi", "--tau", tau_file, "--random", "2", "--out", str(report)])
    assert code == 0
    records = json.loads(report.read_text())
    assert len(records) == 3
    for rec in records:
        assert rec["residual"] < 1e-6
        assert rec["sign"] in (-1, 1)


def test_jacobi_explicit_system_file(tau_file, tmp_path):
    system_file = tmp_path / "system.json"
    system_file.write_text(json.dumps(format_system(reference_fundamental_system())))
    assert main(["jacobi", "--tau", tau_file, "--system", str(system_file)]) == 0


def test_jacobi_rejected_tau(bad_tau_file):
    assert main(["jacobi", "--tau", bad_tau_file]) == 3


def test_jacobi_impossible_tolerance(tau_file):
    assert main(["jacobi", "--tau", tau_file, "--tol", "1e-18"]) == 1


def test_weber_single_and_extra_pairs(tau_file, tmp_path):
    report = tmp_path / "weber.json"
    code = main([
        "weber", "--tau", tau_file, "--qs", "[0 0 0; 0 0 0]", "--qt", "[1 1 0; 1 1 0]",
        "--pairs", "2", "--out", str(report),
    ])
    assert code == 0
    records = json.loads(report.read_text())
    assert len(records) == 3
    for rec in records:
        assert set(rec) == {
            "qS", "qT", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "sign",
            "relative_error",
        }
        assert rec["relative_error"] < 1e-6


def test_weber_rejects_bad_characteristic(tau_file):
    assert main(["weber", "--tau", tau_file, "--qs", "[1 0 0; 1 0 0]",
                 "--qt", "[0 0 0; 0 0 0]"]) == 2
    assert main(["weber", "--tau", tau_file, "--qs", "[0 0 0; 0 0 0]",
                 "--qt", "[0 0 0; 0 0 0]"]) == 2


def test_weber_missing_tau_file():
    assert main(["weber", "--tau", "/nonexistent/tau.json",
                 "--qs", "[0 0 0; 0 0 0]", "--qt", "[1 1 0; 1 1 0]"]) == 2


def test_sign_output(capsys):
    assert main(["sign", "--qs", "000/000", "--qt", "110/110"]) == 0
    assert capsys.readouterr().out.strip() == "+1"
    # q_s + q_t = [100;100] is odd, so the sign flips
    assert main(["sign", "--qs", "100/000", "--qt", "000/100"]) == 0
    assert capsys.readouterr().out.strip() == "-1"


def test_iota_reference(tau_file, capsys):
    assert main(["iota", "--tau", tau_file]) == 0
    assert capsys.readouterr().out.strip() == "+1"


def test_iota_with_basis_selection(tau_file, tmp_path, capsys):
    report = tmp_path / "iota.json"
    code = main([
        "iota", "--tau", tau_file, "--aronhold-index", "0", "--qt", "[1 1 0; 1 1 0]",
        "--out", str(report),
    ])
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["sign"] in (-1, 1)
    assert payload["residual"] < 1e-6


def test_iota_flag_pairing(tau_file):
    assert main(["iota", "--tau", tau_file, "--aronhold-index", "0"]) == 2
    assert main(["iota", "--tau", tau_file, "--aronhold-index", "400",
                 "--qt", "[1 1 0; 1 1 0]"]) == 2


def test_reports_are_deterministic(tau_file, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code = main([
            "weber", "--tau", tau_file, "--qs", "000/000", "--qt", "110/110",
            "--pairs", "3", "--seed", "11", "--out", str(path),
        ])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
