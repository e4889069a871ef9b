"""Map estimated grid frequencies back to synchronization parameters, plus error metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .frontend import wrap_half


@dataclass(frozen=True)
class SyncEstimate:
    """Recovered synchronization parameters with the raw frequencies they came from."""

    f1_hat: float
    f2_hat: float
    eps_frac_hat: float
    ell_hat: int
    eps_total_hat: float
    p_hat: int
    p_hat_frac: float
    low_confidence: bool = False


def invert_frequencies(
    f1_hat: float,
    f2_hat: float,
    alpha: float,
    n: int,
    ell_candidates: Iterable[int] = (0,),
    low_confidence: bool = False,
) -> SyncEstimate:
    """Invert f1 = eps_frac*(1+alpha) + ell*alpha (mod 1) and f2 = -p/N.

    f1 is observable only modulo 1, so the integer CFO is ambiguous: each
    candidate ell is tried, candidates whose implied |eps_frac| exceeds 0.5
    are dropped, and the survivor with the smallest |eps_frac| wins (ties go
    to the smallest ell). p comes from rounding -N*f2 into [0, N).
    """
    p_frac = -n * f2_hat
    p_hat = int(np.rint(p_frac)) % n
    best: tuple[float, int] | None = None
    for ell in sorted(set(int(e) for e in ell_candidates)):
        eps_frac = wrap_half(np.mod(f1_hat - ell * alpha, 1.0)) / (1 + alpha)
        if abs(eps_frac) > 0.5:
            continue
        if best is None or abs(eps_frac) < abs(best[0]):
            best = (eps_frac, ell)
    if best is None:
        raise ValueError("integer CFO unresolved: no candidate yields |eps_frac| <= 0.5")
    eps_frac, ell = best
    return SyncEstimate(
        f1_hat=float(f1_hat),
        f2_hat=float(f2_hat),
        eps_frac_hat=float(eps_frac),
        ell_hat=ell,
        eps_total_hat=float(eps_frac + ell),
        p_hat=p_hat,
        p_hat_frac=float(p_frac),
        low_confidence=low_confidence,
    )


def _mse(estimates: Sequence[float], truths: Sequence[float]) -> float:
    est = np.asarray(estimates, dtype=float)
    tru = np.asarray(truths, dtype=float)
    if est.size == 0:
        raise ValueError("empty input")
    if est.shape != tru.shape:
        raise ValueError(f"length mismatch: {est.shape} vs {tru.shape}")
    return float(np.mean((est - tru) ** 2))


def cfo_mse(estimates: Sequence[float], truths: Sequence[float]) -> float:
    """Mean squared error of the total normalized CFO estimates."""
    return _mse(estimates, truths)


def sto_mse(estimates: Sequence[float], truths: Sequence[float]) -> float:
    """Mean squared error of the misalignment estimates, in samples squared."""
    return _mse(estimates, truths)
