"""Impairment model: CFO rotations, window misalignment, AWGN, seeding."""

import numpy as np
import pytest

from ofdmsync import (
    ChannelParams,
    OfdmConfig,
    PilotSpec,
    add_awgn,
    apply_impairments,
    make_pilot_frames,
    make_rng,
    split_cfo,
    strip_cp,
)


class TestSplitCfo:
    @pytest.mark.parametrize("eps,frac,ell", [(0.2, 0.2, 0), (1.2, 0.2, 1), (-0.3, -0.3, 0), (0.0, 0.0, 0)])
    def test_examples(self, eps, frac, ell):
        f, l = split_cfo(eps)
        assert l == ell
        np.testing.assert_allclose(f, frac, atol=1e-15)

    def test_split_is_exact(self):
        rng = np.random.default_rng(0)
        for eps in rng.uniform(-3, 3, 200):
            f, l = split_cfo(eps)
            assert abs(f) <= 0.5
            assert f + l == eps  # reconstruction to machine precision


class TestApplyImpairments:
    def setup_method(self):
        self.cfg = OfdmConfig(4, 1, 2)
        self.frames = make_pilot_frames(PilotSpec(1.0), self.cfg)

    def test_identity_impairment(self):
        out = apply_impairments(0, self.frames, ChannelParams(eps=0.0, p=0), self.cfg)
        np.testing.assert_array_equal(out, self.frames[0])

    def test_misalignment_shifts_window_content(self):
        # window delayed by one sample: the impulse at n=ng moves to n=ng+1
        out = apply_impairments(0, self.frames, ChannelParams(eps=0.0, p=1), self.cfg)
        np.testing.assert_allclose(out, [0, 0, 1, 0, 0], atol=1e-15)

    def test_per_frame_phase_factor(self):
        cfg = OfdmConfig(64, 16, 2)
        frames = make_pilot_frames(PilotSpec(1.0), cfg)
        p = 3
        base = apply_impairments(1, frames, ChannelParams(eps=0.0, p=p), cfg)
        out = apply_impairments(1, frames, ChannelParams(eps=0.25, p=p), cfg)
        # at n=0 the per-sample rotation is 1, leaving the per-frame factor
        nz = np.flatnonzero(np.abs(base) > 0.5)[0]
        ratio = out[nz] / base[nz]
        expected = np.exp(1j * 0.625 * np.pi) * np.exp(2j * np.pi * 0.25 * nz / 64)
        np.testing.assert_allclose(ratio, expected, atol=1e-12)

    def test_window_energy_preserved(self):
        cfg = OfdmConfig(16, 4, 2)
        rng = np.random.default_rng(5)
        from ofdmsync import idft_modulate

        frames = [idft_modulate(rng.standard_normal(16) + 1j * rng.standard_normal(16), cfg) for _ in range(2)]
        e_in = np.sum(np.abs(strip_cp(frames[0], cfg)) ** 2)
        for p in (0, 1, 5, 15):
            out = apply_impairments(0, frames, ChannelParams(eps=0.37, p=p), cfg)
            e_out = np.sum(np.abs(strip_cp(out, cfg)) ** 2)
            np.testing.assert_allclose(e_out, e_in, rtol=1e-12)

    def test_p_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            apply_impairments(0, self.frames, ChannelParams(eps=0.0, p=4), self.cfg)
        with pytest.raises(ValueError):
            apply_impairments(0, self.frames, ChannelParams(eps=0.0, p=-1), self.cfg)

    def test_bad_frame_index_rejected(self):
        with pytest.raises(ValueError):
            apply_impairments(2, self.frames, ChannelParams(eps=0.0, p=0), self.cfg)


class TestAwgn:
    def test_noiseless_is_identity(self):
        frame = np.arange(5, dtype=complex)
        out = add_awgn(frame, 0.0, make_rng(1, 0))
        np.testing.assert_array_equal(out, frame)

    def test_empirical_variance(self):
        rng = make_rng(42, 0)
        out = add_awgn(np.zeros(10**6, dtype=complex), 1.0, rng)
        var = np.mean(np.abs(out) ** 2)
        assert abs(var - 1.0) < 0.01

    def test_deterministic_given_seed(self):
        frame = np.ones(64, dtype=complex)
        a = add_awgn(frame, 0.5, make_rng(7, 3))
        b = add_awgn(frame, 0.5, make_rng(7, 3))
        np.testing.assert_array_equal(a, b)

    def test_distinct_streams_differ(self):
        frame = np.ones(64, dtype=complex)
        a = add_awgn(frame, 0.5, make_rng(7, 3))
        b = add_awgn(frame, 0.5, make_rng(7, 4))
        assert np.any(a != b)

    def test_negative_noise_rejected(self):
        with pytest.raises(ValueError):
            add_awgn(np.ones(4, dtype=complex), -0.1, make_rng(0, 0))
        with pytest.raises(ValueError):
            ChannelParams(eps=0.0, p=0, n0=-1.0)
