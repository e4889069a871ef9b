"""Command-line entry point: simulate | sweep | crlb | complexity.

Flags override config-file values, which override defaults. The config file
is flat `key = value` text using the flag names with underscores. Exit codes:
0 success, 2 configuration error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .channel import ChannelParams, add_awgn, apply_impairments, split_cfo, trial_streams
from .crlb import crlb_analytic
from .esprit import EspritConfig, esprit_2d
from .frontend import mode_coefficient, receive_grid
from .montecarlo import (
    METHODS,
    SweepConfig,
    complexity_report,
    run_sweep,
    snr_to_n0,
)
from .ofdm import OfdmConfig, PilotSpec, make_pilot_frames
from .sync import invert_frequencies


class ConfigError(ValueError):
    pass


def parse_snr_grid(text: str) -> tuple[float, ...]:
    """Parse 'start:stop:step' (inclusive) or a single dB value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"bad SNR grid {text!r}, expected start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError(f"SNR grid step must be positive, got {step}")
        return tuple(np.arange(start, stop + step / 2, step).tolist())
    return (float(text),)


def parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"expected 'lo,hi', got {text!r}")
    return float(parts[0]), float(parts[1])


def parse_methods(text: str) -> tuple[str, ...]:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise ConfigError(f"unknown methods {sorted(unknown)}, choose from {list(METHODS)}")
    return methods


def load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value.strip("'\"")
    return values


# option name -> (converter from string, default); shared across subcommands
_CONVERTERS = {
    "n": int,
    "ng": int,
    "m_frames": int,
    "p_window": int,
    "q_window": int,
    "beta": float,
    "solver": str,
    "seed": int,
    "eps": float,
    "eps_range": parse_pair,
    "p": int,
    "snr_db": str,
    "trials": int,
    "methods": parse_methods,
    "jobs": int,
    "out": str,
    "g": int,
    "d": int,
    "k_pss": int,
    "noiseless": lambda s: s.lower() in ("1", "true", "yes"),
}

_DEFAULTS = {
    "n": 64,
    "ng": 16,
    "m_frames": 2,
    "p_window": 2,
    "q_window": 2,
    "beta": 8.0,
    "solver": "tls",
    "seed": 20240901,
    "eps": None,
    "eps_range": (0.2, 0.25),
    "p": 2,
    "snr_db": None,
    "trials": 2000,
    "methods": METHODS,
    "jobs": 1,
    "out": None,
    "g": 500,
    "d": 4,
    "k_pss": 4,
    "noiseless": False,
}


def _effective(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    eff = dict(_DEFAULTS)
    if getattr(args, "config", None):
        for key, raw in load_config_file(args.config).items():
            if key not in _CONVERTERS:
                raise ConfigError(f"unknown config key {key!r}")
            eff[key] = _CONVERTERS[key](raw)
    for key in _CONVERTERS:
        val = getattr(args, key, None)
        if val is not None:  # argparse converters already produced final types
            eff[key] = val
    return eff


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--n", type=int)
    parser.add_argument("--ng", type=int)
    parser.add_argument("--m-frames", dest="m_frames", type=int)
    parser.add_argument("--p-window", dest="p_window", type=int)
    parser.add_argument("--q-window", dest="q_window", type=int)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--solver", choices=["ls", "tls"])
    parser.add_argument("--seed", type=int)
    parser.add_argument("--eps", type=float)
    parser.add_argument("--eps-range", dest="eps_range", type=parse_pair)
    parser.add_argument("--p", type=int)
    parser.add_argument("--snr-db", dest="snr_db")
    parser.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ofdmsync")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="single-trial diagnostic report")
    _add_common(sim)

    sweep = sub.add_parser("sweep", help="Monte Carlo MSE sweep, CSV output")
    _add_common(sweep)
    sweep.add_argument("--trials", type=int)
    sweep.add_argument("--methods", type=parse_methods)
    sweep.add_argument("--jobs", type=int)
    sweep.add_argument("--noiseless", action="store_const", const=True, default=None)

    crlb = sub.add_parser("crlb", help="CRLB table over an SNR grid")
    _add_common(crlb)

    comp = sub.add_parser("complexity", help="flop-count comparison report")
    _add_common(comp)
    comp.add_argument("--g", type=int)
    comp.add_argument("--d", type=int)
    comp.add_argument("--k-pss", dest="k_pss", type=int)
    return parser


def _ofdm_config(eff: dict) -> OfdmConfig:
    return OfdmConfig(n=eff["n"], ng=eff["ng"], m_frames=eff["m_frames"])


def _esprit_config(eff: dict) -> EspritConfig:
    return EspritConfig(
        p_window=eff["p_window"], q_window=eff["q_window"], beta=eff["beta"], solver=eff["solver"]
    )


def cmd_simulate(eff: dict) -> int:
    ofdm = _ofdm_config(eff)
    if not 0 <= eff["p"] < ofdm.n:
        raise ConfigError(f"p={eff['p']} outside [0, {ofdm.n})")
    snr_db = float(eff["snr_db"]) if eff["snr_db"] is not None else 100.0
    rng_eps, rng_noise = trial_streams(eff["seed"], 0, 2)
    eps = eff["eps"] if eff["eps"] is not None else float(rng_eps.uniform(*eff["eps_range"]))
    n0 = snr_to_n0(snr_db)
    pilot = PilotSpec(complex(np.sqrt(ofdm.n)))
    frames = make_pilot_frames(pilot, ofdm)
    ch = ChannelParams(eps=eps, p=eff["p"], n0=n0)
    rx = [add_awgn(apply_impairments(m, frames, ch, ofdm), n0, rng_noise) for m in range(ofdm.m_frames)]
    grid = receive_grid(rx, ofdm)
    pairs, diag = esprit_2d(grid, _esprit_config(eff), return_diagnostics=True)
    eps_frac, ell = split_cfo(eps)
    candidates = sorted({0, ell})
    est = invert_frequencies(pairs[0][0], pairs[0][1], ofdm.alpha, ofdm.n, candidates)
    lam = abs(mode_coefficient(eps_frac, ell, eff["p"], pilot.value, ofdm))
    print(f"config: n={ofdm.n} ng={ofdm.ng} m_frames={ofdm.m_frames} "
          f"P={eff['p_window']} Q={eff['q_window']} beta={eff['beta']} solver={eff['solver']} "
          f"seed={eff['seed']} snr_db={snr_db}")
    print(f"true:      eps={eps:.12f} (frac={eps_frac:.12f} ell={ell})  p={eff['p']}")
    print(f"estimated: eps={est.eps_total_hat:.12f} (frac={est.eps_frac_hat:.12f} ell={est.ell_hat})  p={est.p_hat}")
    print(f"raw frequencies: f1={est.f1_hat:.12f}  f2={est.f2_hat:.12f}  (p_frac={est.p_hat_frac:.6f})")
    print(f"mode amplitude |c|={lam:.6f}")
    print("grid singular values:", " ".join(f"{s:.6e}" for s in diag["singular_values"]))
    print(f"low_confidence: {diag['low_confidence']}")
    return 0


def cmd_sweep(eff: dict) -> int:
    snr_list = parse_snr_grid(eff["snr_db"]) if eff["snr_db"] else SweepConfig().snr_db_list
    cfg = SweepConfig(
        ofdm=_ofdm_config(eff),
        esprit=_esprit_config(eff),
        snr_db_list=snr_list,
        trials=eff["trials"],
        eps_low=eff["eps_range"][0],
        eps_high=eff["eps_range"][1],
        p_true=eff["p"],
        master_seed=eff["seed"],
        methods=eff["methods"],
        noiseless=eff["noiseless"],
    )
    out = Path(eff["out"] or "sweep.csv")
    result = run_sweep(cfg, jobs=eff["jobs"])
    result.to_csv(out)
    result.write_metadata(out.with_suffix(".meta.json"))
    print(f"wrote {out} and {out.with_suffix('.meta.json')} "
          f"({len(snr_list)} SNR points x {len(cfg.methods)} methods, {cfg.trials} trials each)")
    return 0


def cmd_crlb(eff: dict) -> int:
    ofdm = _ofdm_config(eff)
    if not 0 <= eff["p"] < ofdm.n:
        raise ConfigError(f"p={eff['p']} outside [0, {ofdm.n})")
    snr_list = parse_snr_grid(eff["snr_db"]) if eff["snr_db"] else SweepConfig().snr_db_list
    eps = eff["eps"] if eff["eps"] is not None else 0.5 * (eff["eps_range"][0] + eff["eps_range"][1])
    eps_frac, ell = split_cfo(eps)
    lam = abs(mode_coefficient(eps_frac, ell, eff["p"], complex(np.sqrt(ofdm.n)), ofdm))
    lines = ["snr_db,crlb_eps,crlb_p,crlb_f1,crlb_f2,lambda"]
    for snr in snr_list:
        res = crlb_analytic(ofdm.m_frames, ofdm.n, snr_to_n0(snr), lam, alpha=ofdm.alpha)
        values = (res.crlb_eps, res.crlb_p, res.crlb_f1, res.crlb_f2, lam)
        lines.append(f"{snr}," + ",".join(repr(float(v)) for v in values))
    text = "\n".join(lines) + "\n"
    if eff["out"]:
        Path(eff["out"]).write_text(text)
        print(f"wrote {eff['out']}")
    else:
        print(text, end="")
    return 0


def cmd_complexity(eff: dict) -> int:
    report = complexity_report(
        n=eff["n"],
        ng=eff["ng"],
        m_frames=eff["m_frames"],
        p_window=eff["p_window"],
        q_window=eff["q_window"],
        grid_size=eff["g"],
        d_parts=eff["d"],
        k_pss=eff["k_pss"],
    )
    print(f"{'method':<10} {'flops':>12} {'table':>12}  match  formula")
    for e in report.entries:
        print(f"{e.method:<10} {e.flops:>12} {e.table_flops:>12}  {str(e.matches):<5}  {e.formula}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        eff = _effective(args)
        if args.command == "simulate":
            return cmd_simulate(eff)
        if args.command == "sweep":
            return cmd_sweep(eff)
        if args.command == "crlb":
            return cmd_crlb(eff)
        if args.command == "complexity":
            return cmd_complexity(eff)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
