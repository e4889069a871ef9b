"""OFDM synchronization lab: joint CFO and frame-misalignment estimation via
2-D subspace harmonic retrieval, with CRLB references, classic baselines, and
a Monte Carlo benchmarking harness."""

from .ofdm import OfdmConfig, PilotSpec, idft_modulate, dft_demodulate, strip_cp, make_pilot_frames
from .channel import ChannelParams, apply_impairments, add_awgn, make_rng, split_cfo, trial_streams
from .frontend import (
    ModeParams,
    closed_form_grid,
    dirichlet_kernel,
    mode_coefficient,
    mode_params,
    receive_grid,
    wrap_half,
    wrap_unit,
)
from .esprit import (
    EspritConfig,
    EstimationError,
    HankelEmbedding,
    esprit_2d,
    hankel_block_embed,
    pair_and_extract,
    shift_invariance_operator,
    signal_subspace,
)
from .sync import SyncEstimate, cfo_mse, invert_frequencies, sto_mse
from .baselines import (
    BeekConfig,
    MinnConfig,
    PssConfig,
    beek_estimate,
    minn_estimate,
    minn_preamble,
    pss_estimate,
    pss_frame,
    random_data_frame,
    unit_power_amplitude,
    zadoff_chu,
)
from .estimators import BeekEstimator, EspritSynchronizer, MinnEstimator, PssEstimator
from .crlb import CrlbResult, FisherInputs, crlb_analytic, fisher_matrix
from .montecarlo import (
    METHODS,
    ComplexityReport,
    SweepConfig,
    SweepResult,
    complexity_report,
    crlb_reference,
    run_sweep,
    run_trial,
    snr_to_n0,
)

__version__ = "0.1.0"

__all__ = [
    "OfdmConfig", "PilotSpec", "idft_modulate", "dft_demodulate", "strip_cp", "make_pilot_frames",
    "ChannelParams", "apply_impairments", "add_awgn", "make_rng", "split_cfo", "trial_streams",
    "ModeParams", "closed_form_grid", "dirichlet_kernel", "mode_coefficient", "mode_params",
    "receive_grid", "wrap_half", "wrap_unit",
    "EspritConfig", "EstimationError", "HankelEmbedding", "esprit_2d", "hankel_block_embed",
    "pair_and_extract", "shift_invariance_operator", "signal_subspace",
    "SyncEstimate", "cfo_mse", "invert_frequencies", "sto_mse",
    "BeekConfig", "MinnConfig", "PssConfig", "beek_estimate", "minn_estimate", "minn_preamble",
    "pss_estimate", "pss_frame", "random_data_frame", "unit_power_amplitude", "zadoff_chu",
    "BeekEstimator", "EspritSynchronizer", "MinnEstimator", "PssEstimator",
    "CrlbResult", "FisherInputs", "crlb_analytic", "fisher_matrix",
    "METHODS", "ComplexityReport", "SweepConfig", "SweepResult", "complexity_report",
    "crlb_reference", "run_sweep", "run_trial", "snr_to_n0",
]
