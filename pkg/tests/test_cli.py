import math

import pytest

from hcslab.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main
from hcslab.sweep import CSV_HEADER


def run_cli(*args):
    return main(list(args))


class TestSweepCommand:
    def test_writes_csv(self, tmp_path):
        out = tmp_path / "out.csv"
        code = run_cli(
            "sweep", "--witness", "squeezing", "--epsilon", "0.5", "--orders", "1,2",
            "--alpha-min", "0", "--alpha-max", "1", "--alpha-steps", "3", "--out", str(out),
        )
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 2 * 3

    def test_identical_invocations_are_byte_identical(self, tmp_path):
        args = [
            "sweep", "--witness", "antibunching", "--epsilon", "0,0.5", "--orders", "2",
            "--alpha-min", "0.1", "--alpha-max", "2", "--alpha-steps", "7",
        ]
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(*args, "--out", str(first)) == EXIT_OK
        assert run_cli(*args, "--out", str(second)) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_invalid_range_is_usage_error(self, tmp_path, capsys):
        code = run_cli("sweep", "--alpha-min", "3", "--alpha-max", "1", "--out", str(tmp_path / "x.csv"))
        assert code == EXIT_USAGE
        assert "alpha" in capsys.readouterr().err

    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as excinfo:
            run_cli("sweep", "--bogus")
        assert excinfo.value.code == 2

    def test_unwritable_path_is_io_error(self, capsys):
        code = run_cli("sweep", "--alpha-steps", "2", "--out", "/nonexistent-dir/x.csv")
        assert code == EXIT_IO
        capsys.readouterr()

    def test_config_file_with_flag_override(self, tmp_path):
        config = tmp_path / "sweep.cfg"
        config.write_text("witness=squeezing\nalpha-steps=5\nalpha-max=1\nepsilon=0.5\norders=1\n")
        out = tmp_path / "out.csv"
        code = run_cli("sweep", "--config", str(config), "--alpha-steps", "3", "--out", str(out))
        assert code == EXIT_OK
        # flag wins over config for steps; config supplies everything else
        assert len(out.read_text().splitlines()) == 1 + 3


class TestFigureCommand:
    def test_figure_3_rows(self, tmp_path, capsys):
        out = tmp_path / "fig3.csv"
        assert run_cli("figure", "3", "--out", str(out)) == EXIT_OK
        assert len(out.read_text().splitlines()) == 1 + 324
        assert "324" in capsys.readouterr().out


class TestValidateCommand:
    def test_small_grid_passes(self, capsys):
        code = run_cli(
            "validate", "--epsilon", "0,0.5,1", "--phi", "0", "--alpha-abs", "0,1", "--alpha-arg", "0",
        )
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "overall: PASS" in out
        assert "worst=" in out

    def test_forced_small_dimension_reports_truncation_class(self, capsys):
        code = run_cli(
            "validate", "--epsilon", "0.5", "--phi", "0", "--alpha-abs", "3", "--alpha-arg", "0",
            "--force-dim", "4",
        )
        assert code == EXIT_VALIDATION
        out = capsys.readouterr().out
        assert "TRUNCATION-INADEQUATE" in out
        assert "overall: FAIL" in out

    def test_coherent_row_reports_exact_zeros(self, capsys):
        code = run_cli("validate", "--epsilon", "1", "--phi", "0", "--alpha-abs", "1,2", "--alpha-arg", "0")
        assert code == EXIT_OK
        assert "overall: PASS" in capsys.readouterr().out


class TestHeraldCommand:
    def test_balanced_run_reports_mapping_and_fidelities(self, capsys):
        code = run_cli("herald", "--theta", "0", "--xpm", "0.01", "--alpha-abs", "1")
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "epsilon=0" in out
        assert "fidelity linearized vs closed-form state: 1" in out
        assert "success probability" in out

    def test_exact_vs_linearized_reported(self, capsys):
        code = run_cli(
            "herald", "--t", "0.8", "--r", "0.6", "--theta", str(math.pi / 4),
            "--xpm", "0.01", "--alpha-abs", "1.5", "--kerr-mode", "exact",
        )
        assert code == EXIT_OK
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("fidelity exact vs linearized"))
        assert float(line.split(":")[1]) >= 0.999

    def test_degenerate_settings_are_usage_error(self, capsys):
        code = run_cli("herald", "--theta", "0", "--xpm", "0")
        assert code == EXIT_USAGE
        assert "degenerate" in capsys.readouterr().err

    def test_csv_append(self, tmp_path, capsys):
        out = tmp_path / "herald.csv"
        args = ["herald", "--theta", "0.3", "--xpm", "0.02", "--alpha-abs", "1", "--out", str(out)]
        assert run_cli(*args) == EXIT_OK
        assert run_cli(*args) == EXIT_OK
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert lines[0].startswith("t_bs2,r_bs2,theta")
        assert len(lines) == 3  # one header, two appended rows
