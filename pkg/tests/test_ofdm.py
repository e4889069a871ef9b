"""Modulator/demodulator contracts: scaling, cyclic prefix, round trips."""

import numpy as np
import pytest

from ofdmsync import OfdmConfig, PilotSpec, dft_demodulate, idft_modulate, make_pilot_frames, strip_cp
from ofdmsync.ofdm import frame_has_cp

CP_TOL = 1e-12


def direct_modulate(symbols, cfg):
    """Independent oracle: literal evaluation of the modulation sum."""
    out = np.zeros(cfg.nt, dtype=complex)
    for n in range(cfg.nt):
        out[n] = sum(
            symbols[k] * np.exp(2j * np.pi * k * (n - cfg.ng) / cfg.n) for k in range(cfg.n)
        ) / cfg.n
    return out


class TestConfig:
    def test_alpha_and_nt(self):
        cfg = OfdmConfig(64, 16)
        assert cfg.alpha == 16 / 64
        assert cfg.nt == 80

    @pytest.mark.parametrize("n,ng,m", [(0, 0, 1), (4, 4, 1), (4, -1, 1), (4, 1, 0)])
    def test_invalid_config_rejected(self, n, ng, m):
        with pytest.raises(ValueError):
            OfdmConfig(n, ng, m)

    def test_zero_pilot_rejected(self):
        with pytest.raises(ValueError):
            PilotSpec(0.0)


class TestIdftModulate:
    def test_single_carrier_identity(self):
        frame = idft_modulate([3.0 - 1.0j], OfdmConfig(1, 0, 1))
        np.testing.assert_allclose(frame, [3.0 - 1.0j])

    def test_constant_pilots_form_shifted_impulse(self):
        cfg = OfdmConfig(4, 1)
        frame = idft_modulate([1, 1, 1, 1], cfg)
        np.testing.assert_allclose(frame, [0, 1, 0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(frame, direct_modulate(np.ones(4), cfg), atol=1e-12)

    def test_cp_property(self):
        cfg = OfdmConfig(4, 1)
        frame = idft_modulate([1, 1, 1, 1], cfg)
        assert frame[0] == frame[4]
        assert frame_has_cp(frame, cfg, CP_TOL)

    def test_matches_direct_evaluation_random(self):
        rng = np.random.default_rng(11)
        cfg = OfdmConfig(8, 3)
        x = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        np.testing.assert_allclose(idft_modulate(x, cfg), direct_modulate(x, cfg), atol=1e-12)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            idft_modulate([1, 2, 3], OfdmConfig(4, 1))


class TestDftDemodulate:
    def test_round_trip(self):
        rng = np.random.default_rng(7)
        cfg = OfdmConfig(8, 2)
        x = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        back = dft_demodulate(strip_cp(idft_modulate(x, cfg), cfg))
        assert np.max(np.abs(back - x)) < 1e-12

    def test_constant_input(self):
        np.testing.assert_allclose(dft_demodulate(np.ones(4)), [4, 0, 0, 0], atol=1e-14)

    def test_zero_vector(self):
        np.testing.assert_allclose(dft_demodulate(np.zeros(4)), np.zeros(4))

    def test_round_trip_many_sizes(self):
        rng = np.random.default_rng(3)
        for n, ng in [(2, 0), (5, 2), (16, 4), (64, 16)]:
            cfg = OfdmConfig(n, ng)
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            back = dft_demodulate(strip_cp(idft_modulate(x, cfg), cfg))
            assert np.max(np.abs(back - x)) < 1e-12


class TestPilotFrames:
    def test_two_identical_impulse_frames(self):
        frames = make_pilot_frames(PilotSpec(1.0), OfdmConfig(4, 1, 2))
        assert len(frames) == 2
        np.testing.assert_allclose(frames[0], [0, 1, 0, 0, 0], atol=1e-15)
        np.testing.assert_array_equal(frames[0], frames[1])

    def test_degenerate_single_sample(self):
        frames = make_pilot_frames(PilotSpec(1.0), OfdmConfig(1, 0, 1))
        np.testing.assert_allclose(frames[0], [1.0])

    def test_frame_energy_equals_pilot_energy(self):
        # window energy equals |X|^2 by Parseval on the impulse-like frame
        for value in (1.0, 2.0 - 1.0j, 8.0):
            frames = make_pilot_frames(PilotSpec(value), OfdmConfig(64, 16, 2))
            energy = np.sum(np.abs(frames[0]) ** 2)
            np.testing.assert_allclose(energy, abs(value) ** 2, rtol=1e-12)

    def test_all_frames_carry_cp(self):
        cfg = OfdmConfig(64, 16, 3)
        for frame in make_pilot_frames(PilotSpec(2.0j), cfg):
            assert frame_has_cp(frame, cfg, CP_TOL)
