"""Monte Carlo benchmark: per-SNR trials for all estimators, MSE tables, CRLB
reference curves, and the flop-count comparison report.

SNR convention: SNR = Es/N0 where Es = 1 is the average symbol energy per
time-domain sample. All transmit signals are normalized to unit average
time-domain power (sqrt(N) per frequency bin), and noise of variance
N0 = 10^(-snr_db/10) per complex sample is injected in the time domain,
giving variance N*N0 per post-DFT bin.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from functools import partial

import numpy as np

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
)
from .channel import ChannelParams, add_awgn, apply_impairments, split_cfo, trial_streams
from .crlb import crlb_analytic
from .esprit import EspritConfig, EstimationError, esprit_2d
from .frontend import mode_coefficient, receive_grid
from .ofdm import OfdmConfig, PilotSpec, make_pilot_frames
from .sync import invert_frequencies

METHODS = ("esprit2d", "beek", "minn", "pss")

#: flop counts printed in the comparison table being reproduced
TABLE_FLOPS = {"esprit2d": 2127384, "pss": 729540, "beek": 31520, "minn": 36480}


@dataclass(frozen=True)
class SweepConfig:
    ofdm: OfdmConfig = field(default_factory=lambda: OfdmConfig(n=64, ng=16, m_frames=2))
    esprit: EspritConfig = field(default_factory=EspritConfig)
    snr_db_list: tuple[float, ...] = tuple(float(s) for s in range(-10, 21))
    trials: int = 2000
    eps_low: float = 0.2
    eps_high: float = 0.25
    p_true: int = 2
    master_seed: int = 20240901
    methods: tuple[str, ...] = METHODS
    ell_candidates: tuple[int, ...] = (0,)
    pilot_amplitude: float | None = None
    noiseless: bool = False

    def __post_init__(self) -> None:
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if not 0 <= self.p_true < self.ofdm.n:
            raise ValueError(f"p_true={self.p_true} outside [0, {self.ofdm.n})")
        if self.eps_high < self.eps_low:
            raise ValueError("eps_high < eps_low")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    @property
    def pilot(self) -> complex:
        return complex(unit_power_amplitude(self.ofdm) if self.pilot_amplitude is None else self.pilot_amplitude)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pilot_amplitude"] = abs(self.pilot)
        return d


@dataclass
class TrialErrors:
    cfo_sq: float = np.nan
    sto_sq: float = np.nan
    failed: bool = False


@dataclass(frozen=True)
class CellStats:
    mse_cfo: float
    mse_sto: float
    se_cfo: float
    se_sto: float
    trials_ok: int
    trials_failed: int


@dataclass
class SweepResult:
    config: dict
    snr_db_list: tuple[float, ...]
    methods: tuple[str, ...]
    cells: dict[tuple[float, str], CellStats]
    crlb: dict[float, tuple[float, float]]
    wall_time_s: float

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["snr_db", "method", "mse_cfo", "mse_sto", "se_cfo", "se_sto", "trials_ok", "trials_failed"]
            )
            for snr in self.snr_db_list:
                for method in self.methods:
                    c = self.cells[(snr, method)]
                    writer.writerow(
                        [snr, method, c.mse_cfo, c.mse_sto, c.se_cfo, c.se_sto, c.trials_ok, c.trials_failed]
                    )
                eps_b, p_b = self.crlb[snr]
                writer.writerow([snr, "CRLB", eps_b, p_b, "", "", "", ""])

    def write_metadata(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(
                {
                    "config": self.config,
                    "master_seed": self.config["master_seed"],
                    "wall_time_s": self.wall_time_s,
                },
                fh,
                indent=2,
                default=str,
            )
            fh.write("\n")


def snr_to_n0(snr_db: float) -> float:
    """Per-sample noise power for unit symbol energy."""
    return 10.0 ** (-snr_db / 10.0)


def _append_prefix(filler: np.ndarray, frames: list[np.ndarray], p: int) -> np.ndarray:
    """Stream whose first signal frame starts at index p, preceded by filler tail."""
    return np.concatenate([filler[filler.size - p :], *frames])


def _impair_stream(tx: np.ndarray, eps: float, n0: float, n: int, rng: np.random.Generator) -> np.ndarray:
    idx = np.arange(tx.size)
    return add_awgn(np.exp(2j * np.pi * eps * idx / n) * tx, n0, rng)


def _esprit_trial(cfg: SweepConfig, eps: float, n0: float, rng: np.random.Generator) -> TrialErrors:
    ofdm = cfg.ofdm
    frames = make_pilot_frames(PilotSpec(cfg.pilot), ofdm)
    ch = ChannelParams(eps=eps, p=cfg.p_true, n0=n0)
    rx = [add_awgn(apply_impairments(m, frames, ch, ofdm), n0, rng) for m in range(ofdm.m_frames)]
    grid = receive_grid(rx, ofdm)
    pairs, diag = esprit_2d(grid, cfg.esprit, return_diagnostics=True)
    if diag["low_confidence"]:
        return TrialErrors(failed=True)
    f1, f2 = pairs[0]
    est = invert_frequencies(f1, f2, ofdm.alpha, ofdm.n, cfg.ell_candidates)
    return TrialErrors((est.eps_total_hat - eps) ** 2, float((est.p_hat - cfg.p_true) ** 2))


def _beek_trial(cfg: SweepConfig, eps: float, n0: float, rng: np.random.Generator) -> TrialErrors:
    ofdm = cfg.ofdm
    filler = random_data_frame(rng, ofdm)
    tx = _append_prefix(filler, [random_data_frame(rng, ofdm) for _ in range(2)], cfg.p_true)
    rx = _impair_stream(tx, eps, n0, ofdm.n, rng)
    rho = 1.0 if n0 == 0 else 1.0 / (1.0 + n0)
    theta, eps_frac = beek_estimate(rx, ofdm, BeekConfig(rho=rho))
    return TrialErrors((eps_frac - eps) ** 2, float((theta - cfg.p_true) ** 2))


def _minn_trial(cfg: SweepConfig, eps: float, n0: float, rng: np.random.Generator) -> TrialErrors:
    ofdm = cfg.ofdm
    mc = MinnConfig()
    filler = random_data_frame(rng, ofdm)
    preamble = minn_preamble(rng, mc, ofdm)
    tx = _append_prefix(filler, [preamble, random_data_frame(rng, ofdm)], cfg.p_true)
    rx = _impair_stream(tx, eps, n0, ofdm.n, rng)
    theta, eps_frac = minn_estimate(rx, mc, ofdm)
    return TrialErrors((eps_frac - eps) ** 2, float((theta - cfg.p_true) ** 2))


def _pss_trial(cfg: SweepConfig, eps: float, n0: float, rng: np.random.Generator) -> TrialErrors:
    ofdm = cfg.ofdm
    pc = PssConfig()
    filler = random_data_frame(rng, ofdm)
    tx = _append_prefix(filler, [pss_frame(pc, ofdm), random_data_frame(rng, ofdm)], cfg.p_true)
    rx = _impair_stream(tx, eps, n0, ofdm.n, rng)
    theta, eps_total = pss_estimate(rx, pc, ofdm)
    return TrialErrors((eps_total - eps) ** 2, float((theta - cfg.p_true) ** 2))


_TRIAL_FNS = {"esprit2d": _esprit_trial, "beek": _beek_trial, "minn": _minn_trial, "pss": _pss_trial}


def run_trial(cfg: SweepConfig, snr_db: float, trial_index: int) -> dict[str, TrialErrors]:
    """One seeded trial: draw eps, synthesize each method's signal, estimate.

    Streams are derived from (master_seed, trial_index) only, so a trial is
    reproducible in isolation and independent of which methods are enabled.
    """
    rng_eps, *method_rngs = trial_streams(cfg.master_seed, trial_index, 1 + len(METHODS))
    eps = float(rng_eps.uniform(cfg.eps_low, cfg.eps_high))
    n0 = 0.0 if cfg.noiseless else snr_to_n0(snr_db)
    out: dict[str, TrialErrors] = {}
    for method, rng in zip(METHODS, method_rngs):
        if method not in cfg.methods:
            continue
        try:
            out[method] = _TRIAL_FNS[method](cfg, eps, n0, rng)
        except (EstimationError, ValueError, np.linalg.LinAlgError):
            out[method] = TrialErrors(failed=True)
    return out


def _aggregate(trials: list[dict[str, TrialErrors]], methods: tuple[str, ...]) -> dict[str, CellStats]:
    cells = {}
    for method in methods:
        cfo = np.array([t[method].cfo_sq for t in trials if not t[method].failed])
        sto = np.array([t[method].sto_sq for t in trials if not t[method].failed])
        n_ok = cfo.size
        n_fail = len(trials) - n_ok
        if n_ok == 0:
            cells[method] = CellStats(np.nan, np.nan, np.nan, np.nan, 0, n_fail)
            continue
        se_cfo = float(np.std(cfo, ddof=1) / np.sqrt(n_ok)) if n_ok > 1 else 0.0
        se_sto = float(np.std(sto, ddof=1) / np.sqrt(n_ok)) if n_ok > 1 else 0.0
        cells[method] = CellStats(float(np.mean(cfo)), float(np.mean(sto)), se_cfo, se_sto, n_ok, n_fail)
    return cells


def crlb_reference(cfg: SweepConfig, snr_db: float, grid_points: int = 33) -> tuple[float, float]:
    """Deterministic CRLB curve value: mean bound over the eps distribution.

    The mode amplitude depends on the drawn eps through the Dirichlet
    attenuation, so the bound is averaged over a fixed quadrature grid of the
    eps interval rather than over random draws.
    """
    ofdm = cfg.ofdm
    n0 = snr_to_n0(snr_db)
    eps_grid = (
        np.linspace(cfg.eps_low, cfg.eps_high, grid_points)
        if cfg.eps_high > cfg.eps_low
        else np.array([cfg.eps_low])
    )
    eps_bounds, p_bounds = [], []
    for eps in eps_grid:
        eps_frac, ell = split_cfo(float(eps))
        lam = abs(mode_coefficient(eps_frac, ell, cfg.p_true, cfg.pilot, ofdm))
        res = crlb_analytic(ofdm.m_frames, ofdm.n, n0, lam, alpha=ofdm.alpha)
        eps_bounds.append(res.crlb_eps)
        p_bounds.append(res.crlb_p)
    return float(np.mean(eps_bounds)), float(np.mean(p_bounds))


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> SweepResult:
    """Aggregate run_trial over the SNR grid; deterministic for a fixed config."""
    start = time.time()
    cells: dict[tuple[float, str], CellStats] = {}
    crlb: dict[float, tuple[float, float]] = {}
    for snr in cfg.snr_db_list:
        worker = partial(run_trial, cfg, snr)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                trials = list(ex.map(worker, range(cfg.trials), chunksize=64))
        else:
            trials = [worker(i) for i in range(cfg.trials)]
        for method, stats in _aggregate(trials, cfg.methods).items():
            cells[(snr, method)] = stats
        crlb[snr] = crlb_reference(cfg, snr)
    return SweepResult(
        config=cfg.to_dict(),
        snr_db_list=cfg.snr_db_list,
        methods=cfg.methods,
        cells=cells,
        crlb=crlb,
        wall_time_s=time.time() - start,
    )


@dataclass(frozen=True)
class ComplexityEntry:
    method: str
    formula: str
    flops: int
    table_flops: int
    matches: bool


@dataclass(frozen=True)
class ComplexityReport:
    entries: tuple[ComplexityEntry, ...]

    def __getitem__(self, method: str) -> ComplexityEntry:
        for e in self.entries:
            if e.method == method:
                return e
        raise KeyError(method)


def complexity_report(
    n: int = 64,
    ng: int = 16,
    m_frames: int = 2,
    p_window: int = 2,
    q_window: int = 2,
    grid_size: int = 500,
    d_parts: int = 4,
    k_pss: int = 4,
) -> ComplexityReport:
    """Evaluate each method's flop formula and compare with the printed counts.

    The subspace method's cost is dominated by the SVD of the L x K extended
    matrix with L = PQ and K = 2(N-Q+1)(M-P+1). The printed table's PSS count
    is only consistent with its own small K (exposed here as k_pss), and two
    of the printed numbers disagree with their formulas; mismatches are
    flagged, not reconciled.
    """
    nt = n + ng
    l_rows = p_window * q_window
    k_cols = 2 * (n - q_window + 1) * (m_frames - p_window + 1)
    entries = []
    esprit_flops = 2 * l_rows * k_cols**2 + k_cols**3 + k_cols + l_rows * k_cols
    entries.append(
        ComplexityEntry(
            "esprit2d",
            f"2LK^2 + K^3 + K + LK (L={l_rows}, K={k_cols})",
            esprit_flops,
            TABLE_FLOPS["esprit2d"],
            esprit_flops == TABLE_FLOPS["esprit2d"],
        )
    )
    pss_flops = (n * k_pss + grid_size) * (15 * n + 5)
    entries.append(
        ComplexityEntry(
            "pss",
            f"(NK + G)(15N + 5) (K={k_pss}, G={grid_size})",
            pss_flops,
            TABLE_FLOPS["pss"],
            pss_flops == TABLE_FLOPS["pss"],
        )
    )
    beek_flops = 24 * nt * ng + 10 * nt
    entries.append(
        ComplexityEntry(
            "beek", "24 Nt Ng + 10 Nt", beek_flops, TABLE_FLOPS["beek"], beek_flops == TABLE_FLOPS["beek"]
        )
    )
    minn_flops = 36 * (n**2 // d_parts) + 6 * n
    entries.append(
        ComplexityEntry(
            "minn",
            f"36 N^2/D + 6N (D={d_parts})",
            minn_flops,
            TABLE_FLOPS["minn"],
            minn_flops == TABLE_FLOPS["minn"],
        )
    )
    return ComplexityReport(entries=tuple(entries))
