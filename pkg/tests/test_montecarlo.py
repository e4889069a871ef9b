"""Monte Carlo harness: determinism, aggregation, CSV schema, complexity table."""

import csv

import numpy as np
import pytest

from ofdmsync import OfdmConfig, SweepConfig, complexity_report, crlb_reference, run_sweep, run_trial

FAST = SweepConfig(
    ofdm=OfdmConfig(64, 16, 2),
    snr_db_list=(0.0, 10.0),
    trials=20,
    master_seed=123,
)


class TestRunTrial:
    def test_noiseless_esprit_is_exact(self):
        cfg = SweepConfig(trials=1, noiseless=True, methods=("esprit2d",))
        out = run_trial(cfg, snr_db=0.0, trial_index=0)
        assert out["esprit2d"].cfo_sq < 1e-16
        assert out["esprit2d"].sto_sq == 0.0

    def test_deterministic(self):
        a = run_trial(FAST, 0.0, 5)
        b = run_trial(FAST, 0.0, 5)
        for method in FAST.methods:
            assert a[method].cfo_sq == b[method].cfo_sq
            assert a[method].sto_sq == b[method].sto_sq

    def test_method_subset_does_not_change_draws(self):
        full = run_trial(FAST, 10.0, 3)
        only = run_trial(
            SweepConfig(
                ofdm=FAST.ofdm, snr_db_list=FAST.snr_db_list, trials=FAST.trials,
                master_seed=FAST.master_seed, methods=("pss",),
            ),
            10.0,
            3,
        )
        assert only.keys() == {"pss"}
        assert only["pss"].cfo_sq == full["pss"].cfo_sq

    def test_esprit_near_crlb_at_moderate_snr(self):
        cfg = SweepConfig(methods=("esprit2d",), trials=300, master_seed=7)
        errs = [run_trial(cfg, 0.0, i)["esprit2d"].cfo_sq for i in range(cfg.trials)]
        mse = float(np.mean(errs))
        bound, _ = crlb_reference(cfg, 0.0)
        assert bound / 10 < mse < bound * 10


class TestRunSweep:
    def test_default_config_grid(self):
        cfg = SweepConfig()
        assert len(cfg.snr_db_list) == 31
        assert cfg.snr_db_list[0] == -10.0 and cfg.snr_db_list[-1] == 20.0
        assert cfg.methods == ("esprit2d", "beek", "minn", "pss")
        assert cfg.trials == 2000
        assert (cfg.eps_low, cfg.eps_high, cfg.p_true) == (0.2, 0.25, 2)

    def test_shape_and_schema(self, tmp_path):
        result = run_sweep(FAST)
        assert set(result.cells) == {(s, m) for s in FAST.snr_db_list for m in FAST.methods}
        out = tmp_path / "sweep.csv"
        result.to_csv(out)
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["snr_db", "method", "mse_cfo", "mse_sto", "se_cfo", "se_sto", "trials_ok", "trials_failed"]
        # per SNR: one row per method plus the CRLB companion row
        assert len(rows) == 1 + len(FAST.snr_db_list) * (len(FAST.methods) + 1)
        crlb_rows = [r for r in rows[1:] if r[1] == "CRLB"]
        assert len(crlb_rows) == len(FAST.snr_db_list)
        assert all(r[4] == "" and r[7] == "" for r in crlb_rows)

    def test_cell_counts_cover_all_trials(self):
        result = run_sweep(FAST)
        for stats in result.cells.values():
            assert stats.trials_ok + stats.trials_failed == FAST.trials

    def test_bitwise_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_sweep(FAST).to_csv(a)
        run_sweep(FAST).to_csv(b)
        assert a.read_bytes() == b.read_bytes()

    def test_parallel_matches_serial(self, tmp_path):
        cfg = SweepConfig(snr_db_list=(10.0,), trials=12, methods=("esprit2d", "beek"), master_seed=9)
        a, b = tmp_path / "serial.csv", tmp_path / "parallel.csv"
        run_sweep(cfg, jobs=1).to_csv(a)
        run_sweep(cfg, jobs=2).to_csv(b)
        assert a.read_bytes() == b.read_bytes()

    def test_noiseless_sweep_floors(self):
        cfg = SweepConfig(snr_db_list=(-10.0, 20.0), trials=10, methods=("esprit2d",), noiseless=True)
        result = run_sweep(cfg)
        for snr in cfg.snr_db_list:
            assert result.cells[(snr, "esprit2d")].mse_cfo < 1e-16
            assert result.cells[(snr, "esprit2d")].mse_sto == 0.0

    def test_noiseless_two_thousand_trials_exact(self):
        cfg = SweepConfig(snr_db_list=(0.0,), trials=2000, methods=("esprit2d",), noiseless=True)
        cell = run_sweep(cfg).cells[(0.0, "esprit2d")]
        assert cell.trials_ok == 2000
        assert cell.mse_cfo < 1e-16
        assert cell.mse_sto == 0.0

    def test_metadata_echoes_config(self, tmp_path):
        import json

        result = run_sweep(FAST)
        path = tmp_path / "sweep.meta.json"
        result.write_metadata(path)
        meta = json.loads(path.read_text())
        assert meta["master_seed"] == FAST.master_seed
        assert meta["config"]["trials"] == FAST.trials
        assert meta["config"]["ofdm"]["n"] == 64

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            SweepConfig(methods=("nope",))
        with pytest.raises(ValueError):
            SweepConfig(p_true=64)


class TestCrlbReference:
    def test_scales_with_noise(self):
        cfg = SweepConfig()
        e0, p0 = crlb_reference(cfg, 0.0)
        e10, p10 = crlb_reference(cfg, 10.0)
        assert e10 == pytest.approx(e0 / 10, rel=1e-9)
        assert p10 == pytest.approx(p0 / 10, rel=1e-9)


class TestComplexityReport:
    def test_beek_matches_table(self):
        entry = complexity_report()["beek"]
        assert entry.flops == 24 * 80 * 16 + 10 * 80 == 31520
        assert entry.matches

    def test_pss_matches_table(self):
        entry = complexity_report()["pss"]
        assert entry.flops == (64 * 4 + 500) * (15 * 64 + 5) == 729540
        assert entry.matches

    def test_subspace_formula_evaluates_but_mismatches_table(self):
        entry = complexity_report()["esprit2d"]
        k = 2 * (64 - 2 + 1) * (2 - 2 + 1)
        assert k == 126
        assert entry.flops == 2 * 4 * k**2 + k**3 + k + 4 * k == 2128014
        assert entry.table_flops == 2127384
        assert not entry.matches

    def test_minn_formula_evaluates_but_mismatches_table(self):
        entry = complexity_report()["minn"]
        assert entry.flops == 36 * (64**2 // 4) + 6 * 64 == 37248
        assert entry.table_flops == 36480
        assert not entry.matches
