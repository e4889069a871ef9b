"""Input validation helpers shared by the estimators and the simulation chain."""

from __future__ import annotations

import numpy as np


def as_complex_vector(x, name: str = "x") -> np.ndarray:
    """Coerce to a 1-D complex ndarray, rejecting anything of other shape."""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    return arr


def as_complex_grid(x, name: str = "grid") -> np.ndarray:
    """Coerce to a 2-D complex ndarray (frames along axis 0, subcarriers along axis 1)."""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def check_length(x: np.ndarray, n: int, name: str = "x") -> np.ndarray:
    if x.shape[0] != n:
        raise ValueError(f"{name} must have length {n}, got {x.shape[0]}")
    return x


def check_index_range(value: int, lo: int, hi: int, name: str) -> int:
    """Validate an integer in the half-open range [lo, hi)."""
    value = int(value)
    if not lo <= value < hi:
        raise ValueError(f"{name}={value} outside [{lo}, {hi})")
    return value
