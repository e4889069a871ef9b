"""Classic synchronization baselines, each with its own transmit signal.

* Beek: cyclic-prefix correlation ML estimator (van de Beek, Sandell,
  Borjesson, "ML estimation of time and frequency offset in OFDM systems",
  IEEE Trans. SP 45(7), 1997). Needs the noise statistics through the
  correlation coefficient rho; works on plain data-bearing frames.
* Minn: sign-patterned repeated training symbol removing the Schmidl & Cox
  timing plateau (Minn, Zeng, Bhargava, IEEE Commun. Lett. 4(7), 2000).
* PSS: cross-correlation against a known Zadoff-Chu primary synchronization
  waveform over a grid of CFO hypotheses.

Timing convention: every estimator returns the stream index where the useful
frame (cyclic prefix included, where one exists) begins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .ofdm import OfdmConfig, idft_modulate
from .validation import as_complex_vector


@dataclass(frozen=True)
class BeekConfig:
    """Genie correlation coefficient rho = snr/(snr+1) and timing search length."""

    rho: float
    search_len: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.rho <= 1:
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")


@dataclass(frozen=True)
class MinnConfig:
    """Number of repeated training parts; the sign pattern is +1 on the first half."""

    d_parts: int = 4
    search_len: int | None = None

    def __post_init__(self) -> None:
        if self.d_parts < 2 or self.d_parts % 2:
            raise ValueError(f"d_parts must be a positive even integer, got {self.d_parts}")

    def pattern(self) -> np.ndarray:
        half = self.d_parts // 2
        return np.concatenate([np.ones(half), -np.ones(half)])


@dataclass(frozen=True)
class PssConfig:
    """Zadoff-Chu sequence parameters and the CFO hypothesis grid."""

    grid_size: int = 500
    zc_root: int = 25
    zc_length: int = 63
    cfo_range: tuple[float, float] = (-0.5, 0.5)
    search_len: int | None = None

    def __post_init__(self) -> None:
        if self.grid_size < 2:
            raise ValueError(f"grid_size must be >= 2, got {self.grid_size}")
        if np.gcd(self.zc_root, self.zc_length) != 1:
            raise ValueError(f"zc_root={self.zc_root} not coprime with zc_length={self.zc_length}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.cfo_range[0], self.cfo_range[1], self.grid_size)


# ---------------------------------------------------------------------------
# transmit signal builders
# ---------------------------------------------------------------------------

def unit_power_amplitude(cfg: OfdmConfig) -> float:
    """Per-bin amplitude giving unit average time-domain power, sqrt(N)."""
    return float(np.sqrt(cfg.n))


def random_qpsk_symbols(rng: np.random.Generator, n: int, amplitude: float) -> np.ndarray:
    return amplitude * np.exp(1j * (np.pi / 4 + np.pi / 2 * rng.integers(0, 4, n)))


def random_data_frame(rng: np.random.Generator, cfg: OfdmConfig, amplitude: float | None = None) -> np.ndarray:
    """One CP-bearing OFDM frame of random QPSK data."""
    amp = unit_power_amplitude(cfg) if amplitude is None else amplitude
    return idft_modulate(random_qpsk_symbols(rng, cfg.n, amp), cfg)


def minn_preamble(rng: np.random.Generator, mc: MinnConfig, cfg: OfdmConfig, amplitude: float | None = None) -> np.ndarray:
    """N-sample training symbol of d_parts sign-patterned repeats, no cyclic prefix.

    Each part is the IDFT of a random unimodular sequence; the whole symbol
    carries the same window energy as a data frame body.
    """
    if cfg.n % mc.d_parts:
        raise ValueError(f"n={cfg.n} not divisible by d_parts={mc.d_parts}")
    amp = unit_power_amplitude(cfg) if amplitude is None else amplitude
    part_len = cfg.n // mc.d_parts
    bins = amp * np.exp(2j * np.pi * rng.random(part_len))
    part = np.fft.ifft(bins) / np.sqrt(mc.d_parts)
    return np.concatenate([sign * part for sign in mc.pattern()])


def zadoff_chu(root: int, length: int) -> np.ndarray:
    """Odd-length Zadoff-Chu sequence exp(-i pi root n (n+1) / length)."""
    n = np.arange(length)
    return np.exp(-1j * np.pi * root * n * (n + 1) / length)


def pss_frame(pc: PssConfig, cfg: OfdmConfig, amplitude: float | None = None) -> np.ndarray:
    """CP-bearing frame carrying the Zadoff-Chu sequence, zero-padded to N bins."""
    if pc.zc_length > cfg.n:
        raise ValueError(f"zc_length={pc.zc_length} exceeds n={cfg.n}")
    amp = unit_power_amplitude(cfg) if amplitude is None else amplitude
    bins = np.zeros(cfg.n, dtype=complex)
    bins[: pc.zc_length] = amp * zadoff_chu(pc.zc_root, pc.zc_length)
    return idft_modulate(bins, cfg)


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------

def _sliding_sum(x: np.ndarray, width: int) -> np.ndarray:
    return np.convolve(x, np.ones(width), mode="valid")


def beek_estimate(rx, cfg: OfdmConfig, bc: BeekConfig) -> tuple[int, float]:
    """CP-correlation ML timing and fractional CFO.

    Maximizes Lambda(theta) = |gamma(theta)| - rho * Phi(theta) with
    gamma(theta) = sum_{n=theta}^{theta+Ng-1} r[n] r*[n+N] and Phi the
    corresponding half-sum of energies; eps_frac = -angle(gamma)/(2 pi).
    """
    r = as_complex_vector(rx, "rx")
    search = cfg.nt if bc.search_len is None else int(bc.search_len)
    if r.size < search + cfg.n + cfg.ng:
        raise ValueError(f"stream too short: need {search + cfg.n + cfg.ng} samples, got {r.size}")
    prod = r[: -cfg.n] * np.conj(r[cfg.n:])
    gamma = _sliding_sum(prod, cfg.ng)
    energy = np.abs(r) ** 2
    phi = 0.5 * (_sliding_sum(energy[: -cfg.n], cfg.ng) + _sliding_sum(energy[cfg.n:], cfg.ng))
    metric = np.abs(gamma[:search]) - bc.rho * phi[:search]
    theta = int(np.argmax(metric))
    eps_frac = float(-np.angle(gamma[theta]) / (2 * np.pi))
    return theta, eps_frac


def minn_estimate(rx, mc: MinnConfig, cfg: OfdmConfig) -> tuple[int, float]:
    """Sign-weighted part correlation timing metric and fractional CFO.

    P(d) = sum_k b_k sum_m r*(d+kL+m) r(d+(k+1)L+m) with b_k the product of
    adjacent pattern signs; M(d) = |P|^2 / R^2 peaks sharply at the training
    symbol start. eps_frac = D * angle(P) / (2 pi).
    """
    r = as_complex_vector(rx, "rx")
    d_parts = mc.d_parts
    part = cfg.n // d_parts
    if cfg.n % d_parts:
        raise ValueError(f"n={cfg.n} not divisible by d_parts={d_parts}")
    search = cfg.nt if mc.search_len is None else int(mc.search_len)
    if r.size < search + cfg.n:
        raise ValueError(f"stream too short: need {search + cfg.n} samples, got {r.size}")
    pattern = mc.pattern()
    weights = pattern[:-1] * pattern[1:]
    prod = np.conj(r[:-part]) * r[part:]
    window = _sliding_sum(prod, part)
    window_energy = _sliding_sum(np.abs(r) ** 2, part)
    p_metric = np.zeros(search, dtype=complex)
    r_metric = np.zeros(search)
    for k in range(d_parts - 1):
        p_metric += weights[k] * window[k * part : k * part + search]
        r_metric += 0.5 * (
            window_energy[k * part : k * part + search]
            + window_energy[(k + 1) * part : (k + 1) * part + search]
        )
    metric = np.abs(p_metric) ** 2 / np.where(r_metric == 0, 1.0, r_metric) ** 2
    theta = int(np.argmax(metric))
    eps_frac = float(d_parts * np.angle(p_metric[theta]) / (2 * np.pi))
    return theta, eps_frac


def pss_estimate(rx, pc: PssConfig, cfg: OfdmConfig, replica: np.ndarray | None = None) -> tuple[int, float]:
    """Joint timing / CFO grid search by cross-correlation with the known waveform.

    For every CFO hypothesis on the grid the replica is remodulated and
    correlated against the stream; the (lag, hypothesis) with the largest
    correlation magnitude wins. The CFO estimate is quantized to the grid.
    """
    r = as_complex_vector(rx, "rx")
    rep = pss_frame(pc, cfg) if replica is None else as_complex_vector(replica, "replica")
    search = cfg.nt if pc.search_len is None else int(pc.search_len)
    if r.size < search + rep.size - 1:
        raise ValueError(f"stream too short: need {search + rep.size - 1} samples, got {r.size}")
    grid = pc.grid()
    lags = sliding_window_view(r, rep.size)[:search]
    n_idx = np.arange(rep.size)
    hypotheses = rep[None, :] * np.exp(2j * np.pi * grid[:, None] * n_idx[None, :] / cfg.n)
    corr = lags @ hypotheses.conj().T
    theta, gi = np.unravel_index(np.argmax(np.abs(corr)), corr.shape)
    return int(theta), float(grid[gi])
