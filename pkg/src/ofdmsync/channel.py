"""AWGN channel impairments: carrier frequency offset rotation and DFT-window misalignment.

The misalignment p slides the receiver's DFT window by p samples relative to
the frame boundary. Because the frame body is one period of an N-periodic
signal, the window then sees the frame evaluated at index n - p under the
periodic extension, i.e. a cyclic shift of the underlying N-sample block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ofdm import OfdmConfig
from .validation import as_complex_vector, check_index_range, check_length


@dataclass(frozen=True)
class ChannelParams:
    """Total normalized CFO eps, misalignment p in samples, noise power n0 per sample."""

    eps: float
    p: int = 0
    n0: float = 0.0

    def __post_init__(self) -> None:
        if self.n0 < 0:
            raise ValueError(f"n0 must be non-negative, got {self.n0}")


def split_cfo(eps: float) -> tuple[float, int]:
    """Split a total normalized CFO into (fractional, integer), |fractional| <= 0.5."""
    ell = int(np.rint(eps))
    return eps - ell, ell


def make_rng(master_seed: int, stream_index: int) -> np.random.Generator:
    """Deterministic per-stream generator; identical inputs give identical draws."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(stream_index)]))


def trial_streams(master_seed: int, trial_index: int, count: int) -> list[np.random.Generator]:
    """Spawn `count` independent child generators for one Monte Carlo trial."""
    ss = np.random.SeedSequence([int(master_seed), int(trial_index)])
    return [np.random.default_rng(child) for child in ss.spawn(count)]


def apply_impairments(m: int, frames: list[np.ndarray], ch: ChannelParams, cfg: OfdmConfig) -> np.ndarray:
    """Rotate frame m by the per-frame and per-sample CFO phases and misalign its window.

    Output sample n is exp(i 2 pi eps m (1+alpha)) * exp(i 2 pi eps n / N)
    times the frame evaluated at index n - p through its N-periodic extension.
    No noise is added here.
    """
    if not 0 <= m < len(frames):
        raise ValueError(f"frame index m={m} outside [0, {len(frames)})")
    p = check_index_range(ch.p, 0, cfg.n, "p")
    frame = check_length(as_complex_vector(frames[m], "frame"), cfg.nt, "frame")
    body = frame[cfg.ng:]
    n = np.arange(cfg.nt)
    shifted = body[np.mod(n - cfg.ng - p, cfg.n)]
    phase = np.exp(2j * np.pi * ch.eps * m * (1 + cfg.alpha)) * np.exp(2j * np.pi * ch.eps * n / cfg.n)
    return phase * shifted


def add_awgn(frame, n0: float, rng: np.random.Generator) -> np.ndarray:
    """Add circularly symmetric complex Gaussian noise of variance n0 per sample."""
    f = as_complex_vector(frame, "frame")
    if n0 < 0:
        raise ValueError(f"n0 must be non-negative, got {n0}")
    if n0 == 0:
        return f.copy()
    z = rng.standard_normal((2, f.size))
    return f + np.sqrt(n0 / 2) * (z[0] + 1j * z[1])
