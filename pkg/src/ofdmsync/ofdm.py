"""OFDM modulation and demodulation with cyclic prefix, plus constant-pilot frames.

Scaling convention: the IDFT carries the 1/N factor and the forward DFT is
unscaled, so the two are exact inverses and time-domain noise of variance N0
per sample maps to variance N*N0 per subcarrier bin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_complex_vector, check_length


@dataclass(frozen=True)
class OfdmConfig:
    """OFDM dimensions: n subcarriers, ng cyclic-prefix samples, m_frames pilot frames."""

    n: int
    ng: int
    m_frames: int = 2

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 0 <= self.ng < self.n:
            raise ValueError(f"ng must satisfy 0 <= ng < n, got ng={self.ng}, n={self.n}")
        if self.m_frames < 1:
            raise ValueError(f"m_frames must be positive, got {self.m_frames}")

    @property
    def nt(self) -> int:
        """Total frame length including the cyclic prefix."""
        return self.n + self.ng

    @property
    def alpha(self) -> float:
        """Cyclic-prefix ratio ng/n."""
        return self.ng / self.n


@dataclass(frozen=True)
class PilotSpec:
    """Constant pilot symbol sent on every subcarrier of every frame."""

    value: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        if abs(self.value) == 0:
            raise ValueError("pilot value must be nonzero")


def idft_modulate(freq_symbols, cfg: OfdmConfig) -> np.ndarray:
    """Modulate one frame: scaled IDFT of the subcarrier symbols plus cyclic prefix.

    samples[n] = (1/N) sum_k X[k] exp(i 2 pi k (n - ng) / N) for n in [0, nt).
    """
    x = check_length(as_complex_vector(freq_symbols, "freq_symbols"), cfg.n, "freq_symbols")
    body = np.fft.ifft(x)
    if cfg.ng == 0:
        return body
    return np.concatenate([body[-cfg.ng:], body])


def dft_demodulate(samples) -> np.ndarray:
    """Unscaled forward DFT of one CP-stripped frame body."""
    return np.fft.fft(as_complex_vector(samples, "samples"))


def strip_cp(frame, cfg: OfdmConfig) -> np.ndarray:
    """Drop the first ng samples, leaving the N-sample DFT window."""
    f = check_length(as_complex_vector(frame, "frame"), cfg.nt, "frame")
    return f[cfg.ng:]


def frame_has_cp(frame, cfg: OfdmConfig, tol: float = 1e-12) -> bool:
    """Check samples[n] == samples[n + N] for 0 <= n < ng."""
    f = check_length(as_complex_vector(frame, "frame"), cfg.nt, "frame")
    if cfg.ng == 0:
        return True
    return bool(np.max(np.abs(f[: cfg.ng] - f[cfg.n:])) <= tol)


def make_pilot_frames(pilot: PilotSpec, cfg: OfdmConfig) -> list[np.ndarray]:
    """Generate m_frames identical frames carrying the constant pilot on all subcarriers."""
    frame = idft_modulate(np.full(cfg.n, pilot.value, dtype=complex), cfg)
    return [frame.copy() for _ in range(cfg.m_frames)]
