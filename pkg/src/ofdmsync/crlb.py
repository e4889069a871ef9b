"""Cramer-Rao lower bounds for the single 2-D complex exponential in white noise.

The observation is the MN-vector of grid entries mu_j = lam * exp(i(phase +
omega1*m'_j + omega2*k'_j)) plus CN(0, N*N0) noise, with parameters
theta = [omega1, omega2, lam, phase]. The closed forms

    CRLB(omega1) = 6 N N0 / (lam^2 M N (M^2 - 1))
    CRLB(omega2) = 6 N N0 / (lam^2 M N (N^2 - 1))

are cross-checked numerically against the inverse Fisher matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FisherInputs:
    """Grid dimensions, noise power, mode amplitude/phase, angular frequencies."""

    m_frames: int
    n: int
    n0: float
    lam: float
    phase: float = 0.0
    omega1: float = 0.0
    omega2: float = 0.0

    def __post_init__(self) -> None:
        if self.m_frames < 2 or self.n < 2:
            raise ValueError("need m_frames >= 2 and n >= 2 for frequency estimability")
        if self.n0 <= 0:
            raise ValueError(f"n0 must be positive, got {self.n0}")
        if self.lam <= 0:
            raise ValueError(f"lam must be positive, got {self.lam}")


@dataclass(frozen=True)
class CrlbResult:
    """Bounds in angular units, cycle units, and synchronization-parameter units."""

    crlb_omega1: float
    crlb_omega2: float
    crlb_f1: float
    crlb_f2: float
    crlb_eps: float
    crlb_p: float


def mean_vector(inp: FisherInputs) -> np.ndarray:
    """mu stacked row-major: entry j has m' = floor(j/N) mod M, k' = j mod N."""
    j = np.arange(inp.m_frames * inp.n)
    m_idx = (j // inp.n) % inp.m_frames
    k_idx = j % inp.n
    return inp.lam * np.exp(1j * (inp.phase + inp.omega1 * m_idx + inp.omega2 * k_idx))


def mean_jacobian(inp: FisherInputs) -> np.ndarray:
    """Columns are d mu / d [omega1, omega2, lam, phase]."""
    j = np.arange(inp.m_frames * inp.n)
    m_idx = (j // inp.n) % inp.m_frames
    k_idx = j % inp.n
    mu = mean_vector(inp)
    return np.stack([1j * m_idx * mu, 1j * k_idx * mu, mu / inp.lam, 1j * mu], axis=1)


def fisher_matrix(inp: FisherInputs) -> np.ndarray:
    """4x4 Fisher information: W = (2 / (N N0)) Re(J^H J)."""
    jac = mean_jacobian(inp)
    return (2.0 / (inp.n * inp.n0)) * np.real(jac.conj().T @ jac)


def crlb_analytic(m_frames: int, n: int, n0: float, lam: float, alpha: float = 0.25) -> CrlbResult:
    """Closed-form bounds, mapped to (eps, p) units through the frequency relations.

    crlb_eps assumes zero integer CFO, where eps = f1 / (1 + alpha);
    crlb_p uses p = -N * f2.
    """
    if m_frames < 2 or n < 2:
        raise ValueError("bounds undefined for m_frames < 2 or n < 2")
    if n0 <= 0 or lam <= 0:
        raise ValueError("n0 and lam must be positive")
    common = 6.0 * n * n0 / (lam**2 * m_frames * n)
    crlb_omega1 = common / (m_frames**2 - 1)
    crlb_omega2 = common / (n**2 - 1)
    four_pi_sq = (2 * np.pi) ** 2
    crlb_f1 = crlb_omega1 / four_pi_sq
    crlb_f2 = crlb_omega2 / four_pi_sq
    return CrlbResult(
        crlb_omega1=crlb_omega1,
        crlb_omega2=crlb_omega2,
        crlb_f1=crlb_f1,
        crlb_f2=crlb_f2,
        crlb_eps=crlb_f1 / (1 + alpha) ** 2,
        crlb_p=n**2 * crlb_f2,
    )
