import numpy as np
import pytest

from agdec import agcode as ag
from agdec import cli
from agdec import experiment as xp
from agdec import fileio
from agdec import oracle as orc


@pytest.fixture()
def herm9_code_file(tmp_path, herm9):
    path = tmp_path / "herm9.code"
    path.write_text(fileio.format_curve_text(herm9, degG=8))
    return path


def test_cmd_radius_table_rows(capsys):
    assert cli.main(["radius", "--n", "200", "--g", "10", "--degG", "19", "--ell", "2"]) == 0
    out = capsys.readouterr().out
    assert "half_designed   90" in out
    assert "sudan_improved  107" in out
    assert "power_radius    113" in out
    assert cli.main(["radius", "--n", "200", "--g", "10", "--degG", "46", "--ell", "2"]) == 0
    out = capsys.readouterr().out
    assert "half_designed   76" in out
    assert "sudan_improved  80" in out
    assert "power_radius    86" in out


def test_cmd_radius_genus_zero_variants_agree(capsys):
    assert cli.main(["radius", "--n", "10", "--g", "0", "--degG", "3", "--ell", "2"]) == 0
    out = capsys.readouterr().out
    basic = [l for l in out.splitlines() if l.startswith("sudan_basic")][0].split()[-1]
    improved = [l for l in out.splitlines() if l.startswith("sudan_improved")][0].split()[-1]
    assert basic == improved


def test_cmd_radius_usage_error(capsys):
    assert cli.main(["radius", "--n", "10", "--g", "0", "--degG", "10"]) == 1
    assert "error" in capsys.readouterr().err


def test_cmd_decode_roundtrip(tmp_path, herm9_code_file, capsys, f9):
    code = fileio.parse_code_text(herm9_code_file.read_text())
    y, c, e = xp.random_channel(code, 7, xp.trial_rng(80, 0))
    received = tmp_path / "y.txt"
    received.write_text(ag.format_vector(f9, y))
    rc = cli.main(["decode", "--code", str(herm9_code_file),
                   "--received", str(received), "--t", "7", "--ell", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "status: success" in out
    assert ag.format_vector(f9, c) in out


def test_cmd_decode_zero_error(tmp_path, herm9_code_file, capsys, f9):
    code = fileio.parse_code_text(herm9_code_file.read_text())
    c = code.encode(np.zeros(code.dim, dtype=np.int64))
    received = tmp_path / "y.txt"
    received.write_text(ag.format_vector(f9, c))
    rc = cli.main(["decode", "--code", str(herm9_code_file),
                   "--received", str(received), "--t", "0", "--ell", "1"])
    assert rc == 0
    assert "status: success" in capsys.readouterr().out


def test_cmd_decode_power_two_at_radius(tmp_path, herm9_code_file, capsys, f9):
    # seeded fixture at t = 9, the ell=2 radius of the [27, 6] code
    code = fileio.parse_code_text(herm9_code_file.read_text())
    y, c, e = xp.random_channel(code, 9, xp.trial_rng(880, 0))
    received = tmp_path / "y9.txt"
    received.write_text(ag.format_vector(f9, y))
    rc = cli.main(["decode", "--code", str(herm9_code_file),
                   "--received", str(received), "--t", "9", "--ell", "2",
                   "--point-policy", "max-drop"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "status: success" in out
    assert ag.format_vector(f9, c) in out


def test_cmd_decode_failure_exit_code(tmp_path, herm9, capsys, f9):
    code_file = tmp_path / "d3.code"
    code_file.write_text(fileio.format_curve_text(herm9, degG=3))
    code = fileio.parse_code_text(code_file.read_text())
    y, c1, c2 = orc.worst_case(code, 12, xp.trial_rng(81, 0))
    received = tmp_path / "worst.txt"
    received.write_text(ag.format_vector(f9, y))
    rc = cli.main(["decode", "--code", str(code_file),
                   "--received", str(received), "--t", "12", "--ell", "2"])
    out = capsys.readouterr().out
    assert rc == 2
    assert "status: failure" in out


def test_cmd_decode_usage_error(tmp_path, capsys):
    rc = cli.main(["decode", "--code", str(tmp_path / "missing.code"),
                   "--received", str(tmp_path / "missing.txt"), "--t", "1"])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_cmd_experiment_end_to_end(tmp_path, herm9, capsys):
    curve_file = tmp_path / "d3.code"
    curve_file.write_text(fileio.format_curve_text(herm9, degG=3))
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        f"curve = {curve_file}\ndegG = 3\nell = 2\nt = radius\n"
        "trials = 2\nseed = 11\npoint_policy = max-drop\noutput = csv\n")
    out_file = tmp_path / "records.csv"
    rc = cli.main(["experiment", "--config", str(cfg), "--output-file", str(out_file)])
    assert rc == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0].split(",") == xp.CSV_COLUMNS
    assert len(lines) == 3
    # identical config and seed give byte-identical output
    out_file2 = tmp_path / "records2.csv"
    assert cli.main(["experiment", "--config", str(cfg),
                     "--output-file", str(out_file2)]) == 0
    assert out_file.read_bytes() == out_file2.read_bytes()


def test_cmd_experiment_config_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("degG = 3\nell = 1\nt = 1\nseed = 0\n")
    assert cli.main(["experiment", "--config", str(cfg)]) == 1
    assert "error" in capsys.readouterr().err


def test_cmd_experiment_missing_key_is_config_error(tmp_path, herm9, capsys):
    curve_file = tmp_path / "d3.code"
    curve_file.write_text(fileio.format_curve_text(herm9, degG=3))
    cfg = tmp_path / "noseed.cfg"
    cfg.write_text(f"curve = {curve_file}\ndegG = 3\nt = 1\n")
    assert cli.main(["experiment", "--config", str(cfg)]) == 1
    assert "missing the required key" in capsys.readouterr().err


def test_cmd_selftest_passes(capsys):
    assert cli.cmd_selftest() == 0
    assert "PASS" in capsys.readouterr().out


def test_cmd_selftest_detects_corruption(capsys):
    # a fresh (uncached) field instance with a tampered multiplication table
    from agdec import algebra
    broken = algebra.Field(3, 2, _token=algebra._FIELD_TOKEN)
    broken._exp = broken._exp.copy()
    broken._exp[1] = 7
    assert cli.cmd_selftest(inject_field=broken) == 1
    assert "FAIL" in capsys.readouterr().out


def test_unknown_subcommand_is_usage_error():
    assert cli.main(["frobnicate"]) == 1
