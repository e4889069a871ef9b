"""Receiver front end: the post-DFT frame/subcarrier grid and its closed-form model.

For constant pilots the noiseless grid is a single 2-D complex exponential,

    R[m, k] = c * exp(i 2 pi f1 m) * exp(i 2 pi f2 k),

whose frequencies encode the impairments: f1 = eps_frac*(1+alpha) + ell*alpha
along the frame axis and f2 = -p/N along the subcarrier axis. The coefficient
c collects the Dirichlet-kernel attenuation of the fractional CFO and a fixed
phase. closed_form_grid therefore serves as an analytic oracle for the whole
simulated modulate/impair/demodulate chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import split_cfo
from .ofdm import OfdmConfig, dft_demodulate
from .validation import as_complex_vector


@dataclass(frozen=True)
class ModeParams:
    """One 2-D harmonic mode: frequencies (f1, f2), complex coefficient, phase psi."""

    f1: float
    f2: float
    coeff: complex
    psi: float

    @property
    def amplitude(self) -> float:
        return abs(self.coeff)


def wrap_unit(x: float) -> float:
    """Wrap to the principal range [0, 1)."""
    return float(np.mod(x, 1.0))


def wrap_half(x: float) -> float:
    """Wrap to the principal range (-0.5, 0.5], ties at the boundary going to +0.5."""
    return float(x - np.ceil(x - 0.5))


def receive_grid(frames: list[np.ndarray], cfg: OfdmConfig) -> np.ndarray:
    """Strip the cyclic prefix of each received frame and DFT it into a grid row."""
    grid = np.zeros((len(frames), cfg.n), dtype=complex)
    for m, frame in enumerate(frames):
        f = as_complex_vector(frame, f"frames[{m}]")
        if f.size != cfg.nt:
            raise ValueError(f"frames[{m}] has length {f.size}, expected {cfg.nt}")
        grid[m] = dft_demodulate(f[cfg.ng:])
    return grid


def dirichlet_kernel(x, n: int):
    """sin(pi x) / (n sin(pi x / n)), with the removable singularity taken as 1."""
    x = np.asarray(x, dtype=float)
    den = n * np.sin(np.pi * x / n)
    singular = np.abs(np.sin(np.pi * x / n)) < 1e-12
    out = np.divide(np.sin(np.pi * x), np.where(singular, 1.0, den))
    return np.where(singular, 1.0, out)


def mode_phase(eps_frac: float, ell: int, p: int, cfg: OfdmConfig) -> float:
    """Fixed phase psi of the grid coefficient."""
    n = cfg.n
    return 2 * np.pi * ((eps_frac + ell) * cfg.alpha + ell * p / n + eps_frac * (n - 1) / (2 * n))


def mode_coefficient(eps_frac: float, ell: int, p: int, pilot: complex, cfg: OfdmConfig) -> complex:
    """Complex coefficient of the single grid mode under constant pilots.

    c = exp(i psi) * X * sum_r D(eps_frac - r) exp(i 2 pi r ((1-N)/(2N) + p/N))
    with D the Dirichlet kernel; the attenuation |c|/|X| < 1 whenever
    eps_frac != 0 reflects the inter-carrier leakage of the fractional CFO.
    """
    if abs(eps_frac) > 0.5:
        raise ValueError(f"|eps_frac| must be <= 0.5, got {eps_frac}")
    n = cfg.n
    r = np.arange(n)
    total = np.sum(
        dirichlet_kernel(eps_frac - r, n) * np.exp(2j * np.pi * r * ((1 - n) / (2 * n) + p / n))
    )
    return np.exp(1j * mode_phase(eps_frac, ell, p, cfg)) * pilot * total


def mode_params(eps: float, p: int, cfg: OfdmConfig, pilot: complex = 1.0 + 0.0j) -> ModeParams:
    """Forward map from impairments (eps, p) to the grid mode (f1, f2, c)."""
    eps_frac, ell = split_cfo(eps)
    f1 = wrap_unit(eps_frac * (1 + cfg.alpha) + ell * cfg.alpha)
    f2 = wrap_half(-p / cfg.n)
    psi = mode_phase(eps_frac, ell, p, cfg)
    coeff = mode_coefficient(eps_frac, ell, p, pilot, cfg)
    return ModeParams(f1=f1, f2=f2, coeff=coeff, psi=psi)


def closed_form_grid(mode: ModeParams, m_frames: int, n: int) -> np.ndarray:
    """Evaluate values[m][k] = c * exp(i 2 pi f1 m) * exp(i 2 pi f2 k)."""
    m = np.arange(m_frames)[:, None]
    k = np.arange(n)[None, :]
    return mode.coeff * np.exp(2j * np.pi * (mode.f1 * m + mode.f2 * k))
