"""Command-line interface: subcommands, config precedence, exit codes."""

import csv
import json
import subprocess
import sys

import pytest

from ofdmsync.cli import main, parse_pair, parse_snr_grid


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsers:
    def test_snr_grid(self):
        assert parse_snr_grid("-10:20:5") == (-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0)
        assert parse_snr_grid("3") == (3.0,)

    def test_bad_grid_rejected(self):
        with pytest.raises(ValueError):
            parse_snr_grid("1:2:3:4")
        with pytest.raises(ValueError):
            parse_snr_grid("1:2:0")

    def test_pair(self):
        assert parse_pair("0.2,0.25") == (0.2, 0.25)
        with pytest.raises(ValueError):
            parse_pair("0.2")


class TestSimulate:
    def test_near_noiseless_recovery(self, capsys):
        code, out, _ = run_cli(
            ["simulate", "--eps", "0.2", "--p", "2", "--snr-db", "100", "--seed", "7"], capsys
        )
        assert code == 0
        assert "p=2" in out
        est_line = next(line for line in out.splitlines() if line.startswith("estimated:"))
        assert "eps=0.2000" in est_line
        assert est_line.rstrip().endswith("p=2")

    def test_out_of_range_p_is_config_error(self, capsys):
        code, _, err = run_cli(["simulate", "--p", "64", "--eps", "0.2"], capsys)
        assert code == 2
        assert "outside" in err

    def test_deterministic_given_seed(self, capsys):
        code_a, out_a, _ = run_cli(["simulate", "--seed", "7", "--snr-db", "10"], capsys)
        code_b, out_b, _ = run_cli(["simulate", "--seed", "7", "--snr-db", "10"], capsys)
        assert code_a == code_b == 0
        assert out_a == out_b


class TestSweep:
    def test_writes_csv_and_metadata(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        code, _, _ = run_cli(
            ["sweep", "--trials", "5", "--snr-db", "0:10:10", "--methods", "esprit2d,beek",
             "--seed", "3", "--out", str(out)],
            capsys,
        )
        assert code == 0
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 1 + 2 * 3  # header + 2 SNR x (2 methods + CRLB)
        meta = json.loads((tmp_path / "s.meta.json").read_text())
        assert meta["config"]["trials"] == 5

    def test_methods_filter(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        code, _, _ = run_cli(
            ["sweep", "--trials", "3", "--snr-db", "5", "--methods", "esprit2d", "--out", str(out)],
            capsys,
        )
        assert code == 0
        methods = {row[1] for row in list(csv.reader(open(out)))[1:]}
        assert methods == {"esprit2d", "CRLB"}

    def test_snr_grid_shape(self, tmp_path, capsys):
        # values starting with a dash need the = form
        out = tmp_path / "s.csv"
        code, _, _ = run_cli(
            ["sweep", "--trials", "2", "--snr-db=-10:20:5", "--methods", "esprit2d", "--out", str(out)],
            capsys,
        )
        assert code == 0
        snrs = {row[0] for row in list(csv.reader(open(out)))[1:]}
        assert len(snrs) == 7

    def test_config_file_and_flag_precedence(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("trials = 4\nsnr_db = 5\nmethods = esprit2d\nseed = 11\n")
        out = tmp_path / "s.csv"
        code, _, _ = run_cli(
            ["sweep", "--config", str(cfgfile), "--trials", "2", "--out", str(out)], capsys
        )
        assert code == 0
        meta = json.loads((tmp_path / "s.meta.json").read_text())
        assert meta["config"]["trials"] == 2           # flag wins
        assert meta["config"]["master_seed"] == 11     # file beats default

    def test_unknown_config_key_is_config_error(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("bogus = 1\n")
        code, _, err = run_cli(["sweep", "--config", str(cfgfile)], capsys)
        assert code == 2
        assert "bogus" in err

    def test_rerun_reproduces_csv_byte_for_byte(self, tmp_path, capsys):
        args = ["sweep", "--trials", "4", "--snr-db", "0", "--methods", "esprit2d,minn", "--seed", "5"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(args + ["--out", str(a)], capsys)[0] == 0
        assert run_cli(args + ["--out", str(b)], capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()


class TestCrlbCommand:
    def test_table_shape(self, capsys):
        code, out, _ = run_cli(["crlb", "--snr-db", "0:20:10", "--eps", "0.225", "--p", "2"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("snr_db,crlb_eps,crlb_p")
        assert len(lines) == 4
        fields = [float(f) for f in lines[1].split(",")]  # plain parseable numbers
        assert len(fields) == 6
        assert fields[1] > 0

    def test_deterministic(self, capsys):
        a = run_cli(["crlb", "--snr-db", "0"], capsys)
        b = run_cli(["crlb", "--snr-db", "0"], capsys)
        assert a == b

    def test_writes_file(self, tmp_path, capsys):
        out = tmp_path / "crlb.csv"
        code, _, _ = run_cli(["crlb", "--snr-db", "0:10:5", "--out", str(out)], capsys)
        assert code == 0
        assert out.read_text().startswith("snr_db,")


class TestComplexityCommand:
    def test_report(self, capsys):
        code, out, _ = run_cli(["complexity"], capsys)
        assert code == 0
        assert "31520" in out and "729540" in out
        assert "2128014" in out and "2127384" in out
        assert "37248" in out and "36480" in out


class TestProcessLevel:
    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ofdmsync.cli", "complexity"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "esprit2d" in proc.stdout

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ofdmsync.cli", "nonsense"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
