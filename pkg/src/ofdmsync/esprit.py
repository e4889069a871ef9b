"""2-D frequency estimation from a complex grid via enhanced-matrix ESPRIT.

Pipeline: block-Hankel embedding of the M x N grid with a P x Q observation
window, forward-backward extension (valid because the modes are undamped),
SVD truncation to the signal subspace, shift-invariance equations along both
window axes solved by LS or TLS, and joint diagonalization of a beta-weighted
combination to pair each mode's two frequencies.

References: R. Roy and T. Kailath, "ESPRIT - estimation of signal parameters
via rotational invariance techniques", IEEE Trans. ASSP 37(7), 1989;
Y. Hua, "Estimating two-dimensional frequencies by matrix enhancement and
matrix pencil", IEEE Trans. SP 40(9), 1992.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .validation import as_complex_grid
from .frontend import wrap_half, wrap_unit


class EstimationError(RuntimeError):
    """Estimation could not be completed on this input (degenerate geometry)."""


#: singular-value ratio above which the subspace split is considered unreliable
LOW_CONFIDENCE_RATIO = 0.99

#: condition-number ceiling for the joint diagonalizer
MAX_DIAGONALIZER_COND = 1e12


@dataclass(frozen=True)
class EspritConfig:
    """Window sizes, pairing scalar, invariance solver, and model order."""

    p_window: int = 2
    q_window: int = 2
    beta: float = 8.0
    solver: str = "tls"
    order: int = 1

    def __post_init__(self) -> None:
        if self.p_window < 1 or self.q_window < 1:
            raise ValueError(f"window sizes must be positive, got P={self.p_window}, Q={self.q_window}")
        if self.solver not in ("ls", "tls"):
            raise ValueError(f"solver must be 'ls' or 'tls', got {self.solver!r}")
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")


@dataclass(frozen=True)
class HankelEmbedding:
    """Forward block-Hankel matrix and its forward-backward extension."""

    re: np.ndarray
    ree: np.ndarray


def hankel_block_embed(grid, p_window: int, q_window: int) -> HankelEmbedding:
    """Embed an M x N grid into a PQ x (M-P+1)(N-Q+1) block-Hankel matrix.

    Block (a, b) is the Hankel matrix of grid row a+b with entry
    (q, t) = grid[a+b, q+t]. The forward-backward extension appends the
    anti-diagonally flipped conjugate, Ree = [Re, J Re* J], doubling the
    column count without changing the signal rank for undamped modes.
    """
    g = as_complex_grid(grid)
    m_frames, n = g.shape
    p, q = int(p_window), int(q_window)
    if not 1 <= p <= m_frames:
        raise ValueError(f"window violates M >= P >= 1: P={p}, M={m_frames}")
    if not 1 <= q <= n:
        raise ValueError(f"window violates N >= Q >= 1: Q={q}, N={n}")
    # row m -> Q x (N-Q+1) Hankel via sliding windows
    row_hankels = sliding_window_view(g, q, axis=1).transpose(0, 2, 1)
    blocks = [
        np.hstack([row_hankels[a + b] for b in range(m_frames - p + 1)])
        for a in range(p)
    ]
    re = np.vstack(blocks)
    ree = np.hstack([re, re[::-1, ::-1].conj()])
    return HankelEmbedding(re=re, ree=ree)


def signal_subspace(ree, order: int, return_singular_values: bool = False):
    """Leading `order` left singular vectors of the extended data matrix."""
    mat = as_complex_grid(ree, "ree")
    if order > min(mat.shape):
        raise ValueError(f"order={order} exceeds min matrix dimension {min(mat.shape)}")
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    us = u[:, :order]
    if return_singular_values:
        return us, s
    return us


def _selection_rows(p_window: int, q_window: int, axis: str) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(p_window * q_window).reshape(p_window, q_window)
    if axis == "m":
        return idx[:-1].ravel(), idx[1:].ravel()
    if axis == "k":
        return idx[:, :-1].ravel(), idx[:, 1:].ravel()
    raise ValueError(f"axis must be 'm' or 'k', got {axis!r}")


def _solve_invariance(a: np.ndarray, b: np.ndarray, solver: str, order: int) -> np.ndarray:
    if solver == "ls":
        return np.linalg.pinv(a) @ b
    # TLS: smallest right-singular subspace of the stacked system
    v = np.linalg.svd(np.hstack([a, b]), full_matrices=False)[2].conj().T
    v12 = v[:order, order:]
    v22 = v[order:, order:]
    return -v12 @ np.linalg.inv(v22)


def shift_invariance_operator(us, p_window: int, q_window: int, axis: str, solver: str = "tls") -> np.ndarray:
    """Solve rows1(Us) @ F = rows2(Us) for the rotation operator along one axis.

    axis='m' shifts whole Q-row blocks (needs P >= 2); axis='k' shifts rows
    within every block (needs Q >= 2). Eigenvalues of F are exp(i 2 pi f).
    """
    u = as_complex_grid(us, "us")
    if u.shape[0] != p_window * q_window:
        raise ValueError(f"us must have P*Q={p_window * q_window} rows, got {u.shape[0]}")
    if axis == "m" and p_window < 2:
        raise ValueError("m-shift invariance needs P >= 2")
    if axis == "k" and q_window < 2:
        raise ValueError("k-shift invariance needs Q >= 2")
    order = u.shape[1]
    sel1, sel2 = _selection_rows(p_window, q_window, axis)
    a, b = u[sel1], u[sel2]
    if a.shape[0] < order or np.linalg.matrix_rank(a) < order:
        raise EstimationError(f"rank-deficient row selection along axis {axis!r}")
    return _solve_invariance(a, b, solver, order)


def pair_and_extract(f1_op, f2_op, beta: float) -> list[tuple[float, float]]:
    """Jointly diagonalize both operators and read paired frequencies.

    Eigendecompose beta*F1 + (1-beta)*F2 = T S T^-1; since both operators
    share eigenvectors, T diagonalizes each, and the paired frequencies are
    the angles of the matched diagonal entries divided by 2 pi. f1 is wrapped
    to [0, 1), f2 to (-0.5, 0.5].
    """
    f1_op = as_complex_grid(np.atleast_2d(f1_op), "f1_op")
    f2_op = as_complex_grid(np.atleast_2d(f2_op), "f2_op")
    if f1_op.shape != f2_op.shape:
        raise ValueError(f"operator shapes differ: {f1_op.shape} vs {f2_op.shape}")
    _, t = np.linalg.eig(beta * f1_op + (1 - beta) * f2_op)
    cond = np.linalg.cond(t)
    if not np.isfinite(cond) or cond > MAX_DIAGONALIZER_COND:
        raise EstimationError(f"ill-conditioned joint diagonalizer, cond={cond:.3e}")
    t_inv = np.linalg.inv(t)
    d1 = np.diag(t_inv @ f1_op @ t)
    d2 = np.diag(t_inv @ f2_op @ t)
    pairs = [
        (wrap_unit(np.angle(a) / (2 * np.pi)), wrap_half(np.angle(b) / (2 * np.pi)))
        for a, b in zip(d1, d2)
    ]
    pairs.sort(key=lambda fp: fp[0])
    return pairs


def esprit_2d(grid, cfg: EspritConfig | None = None, return_diagnostics: bool = False):
    """Estimate the (f1, f2) pairs of an M x N grid of 2-D complex exponentials.

    Returns a list of `cfg.order` pairs, f1 in [0, 1) and f2 in (-0.5, 0.5].
    With return_diagnostics=True also returns a dict carrying the singular
    values of the extended matrix and a low_confidence flag raised when the
    signal/noise singular-value split is nearly degenerate.
    """
    cfg = cfg or EspritConfig()
    emb = hankel_block_embed(grid, cfg.p_window, cfg.q_window)
    us, svals = signal_subspace(emb.ree, cfg.order, return_singular_values=True)
    f1_op = shift_invariance_operator(us, cfg.p_window, cfg.q_window, "m", cfg.solver)
    f2_op = shift_invariance_operator(us, cfg.p_window, cfg.q_window, "k", cfg.solver)
    pairs = pair_and_extract(f1_op, f2_op, cfg.beta)
    if not return_diagnostics:
        return pairs
    low_confidence = False
    if cfg.order < svals.size and svals[cfg.order - 1] > 0:
        low_confidence = bool(svals[cfg.order] / svals[cfg.order - 1] > LOW_CONFIDENCE_RATIO)
    return pairs, {"singular_values": svals, "low_confidence": low_confidence}
