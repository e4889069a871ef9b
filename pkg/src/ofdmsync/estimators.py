"""Scikit-learn style estimator wrappers around the synchronization algorithms.

Each estimator follows the fit/attributes idiom: construct with hyperparameters
(get_params/set_params work as usual), call fit on the received data, then read
the trailing-underscore attributes. EspritSynchronizer consumes the post-DFT
M x N grid; the baseline estimators consume a raw time-domain sample stream.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .baselines import (
    BeekConfig,
    MinnConfig,
    PssConfig,
    beek_estimate,
    minn_estimate,
    pss_estimate,
    pss_frame,
)
from .esprit import EspritConfig, esprit_2d
from .ofdm import OfdmConfig
from .sync import SyncEstimate, invert_frequencies
from .validation import as_complex_grid, as_complex_vector


class EspritSynchronizer(BaseEstimator):
    """Joint CFO / misalignment estimator on the post-DFT pilot grid.

    fit(X) expects a complex (m_frames, n_subcarriers) grid. Fitted attributes:
    modes_ (list of (f1, f2) pairs), singular_values_, low_confidence_, and for
    order=1 the recovered parameters f1_, f2_, eps_frac_, ell_, eps_total_,
    p_, p_frac_ plus estimate_ (the full SyncEstimate).
    """

    def __init__(
        self,
        n_subcarriers: int = 64,
        cp_len: int = 16,
        p_window: int = 2,
        q_window: int = 2,
        beta: float = 8.0,
        solver: str = "tls",
        order: int = 1,
        ell_candidates: tuple[int, ...] = (0,),
    ):
        self.n_subcarriers = n_subcarriers
        self.cp_len = cp_len
        self.p_window = p_window
        self.q_window = q_window
        self.beta = beta
        self.solver = solver
        self.order = order
        self.ell_candidates = ell_candidates

    def fit(self, X, y=None):
        grid = as_complex_grid(X, "X")
        if grid.shape[1] != self.n_subcarriers:
            raise ValueError(
                f"X has {grid.shape[1]} subcarriers, estimator configured for {self.n_subcarriers}"
            )
        cfg = EspritConfig(
            p_window=self.p_window,
            q_window=self.q_window,
            beta=self.beta,
            solver=self.solver,
            order=self.order,
        )
        pairs, diag = esprit_2d(grid, cfg, return_diagnostics=True)
        self.modes_ = pairs
        self.singular_values_ = diag["singular_values"]
        self.low_confidence_ = diag["low_confidence"]
        if self.order == 1:
            f1, f2 = pairs[0]
            alpha = self.cp_len / self.n_subcarriers
            est: SyncEstimate = invert_frequencies(
                f1,
                f2,
                alpha,
                self.n_subcarriers,
                self.ell_candidates,
                low_confidence=self.low_confidence_,
            )
            self.f1_ = est.f1_hat
            self.f2_ = est.f2_hat
            self.eps_frac_ = est.eps_frac_hat
            self.ell_ = est.ell_hat
            self.eps_total_ = est.eps_total_hat
            self.p_ = est.p_hat
            self.p_frac_ = est.p_hat_frac
            self.estimate_ = est
        return self


class BeekEstimator(BaseEstimator):
    """CP-correlation ML synchronizer; fit(X) takes a time-domain stream."""

    def __init__(self, n_subcarriers: int = 64, cp_len: int = 16, rho: float = 1.0, search_len: int | None = None):
        self.n_subcarriers = n_subcarriers
        self.cp_len = cp_len
        self.rho = rho
        self.search_len = search_len

    def fit(self, X, y=None):
        cfg = OfdmConfig(self.n_subcarriers, self.cp_len)
        theta, eps_frac = beek_estimate(
            as_complex_vector(X, "X"), cfg, BeekConfig(rho=self.rho, search_len=self.search_len)
        )
        self.theta_ = theta
        self.eps_frac_ = eps_frac
        return self


class MinnEstimator(BaseEstimator):
    """Sign-patterned repeated-preamble synchronizer; fit(X) takes a stream."""

    def __init__(self, n_subcarriers: int = 64, cp_len: int = 16, d_parts: int = 4, search_len: int | None = None):
        self.n_subcarriers = n_subcarriers
        self.cp_len = cp_len
        self.d_parts = d_parts
        self.search_len = search_len

    def fit(self, X, y=None):
        cfg = OfdmConfig(self.n_subcarriers, self.cp_len)
        theta, eps_frac = minn_estimate(
            as_complex_vector(X, "X"), MinnConfig(d_parts=self.d_parts, search_len=self.search_len), cfg
        )
        self.theta_ = theta
        self.eps_frac_ = eps_frac
        return self


class PssEstimator(BaseEstimator):
    """Zadoff-Chu matched-filter synchronizer with a CFO hypothesis grid."""

    def __init__(
        self,
        n_subcarriers: int = 64,
        cp_len: int = 16,
        grid_size: int = 500,
        zc_root: int = 25,
        zc_length: int = 63,
        cfo_range: tuple[float, float] = (-0.5, 0.5),
        search_len: int | None = None,
    ):
        self.n_subcarriers = n_subcarriers
        self.cp_len = cp_len
        self.grid_size = grid_size
        self.zc_root = zc_root
        self.zc_length = zc_length
        self.cfo_range = cfo_range
        self.search_len = search_len

    def _config(self) -> tuple[OfdmConfig, PssConfig]:
        cfg = OfdmConfig(self.n_subcarriers, self.cp_len)
        pc = PssConfig(
            grid_size=self.grid_size,
            zc_root=self.zc_root,
            zc_length=self.zc_length,
            cfo_range=self.cfo_range,
            search_len=self.search_len,
        )
        return cfg, pc

    def replica(self) -> np.ndarray:
        """The known transmit waveform this estimator correlates against."""
        cfg, pc = self._config()
        return pss_frame(pc, cfg)

    def fit(self, X, y=None):
        cfg, pc = self._config()
        theta, eps_total = pss_estimate(as_complex_vector(X, "X"), pc, cfg)
        self.theta_ = theta
        self.eps_total_ = eps_total
        return self
