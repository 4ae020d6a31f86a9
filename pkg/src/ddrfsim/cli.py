"""Command-line entry point: parses configs, dispatches sweeps, writes CSVs.

Commands: spectroscopy, rabi, sensitivity, register.  All flag frequencies
are ordinary (Hz/kHz), times carry unit suffixes in the flag names; values
convert to internal angular units at this boundary.  Exit codes: 0 success,
2 usage/config error, 3 numerical infeasibility.  Outputs are byte-identical
across runs for identical inputs; a manifest.json records every run.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import default_spin_table_path
from .engine import SequenceParams, TWO_PI, effective_rabi, wrap_phase
from .errors import DDRFError, ConfigError
from .register import FIDELITY_LEVELS, RegisterConfig, fidelity_map
from .sensing import (
    AmplitudePolicy,
    CoherenceModel,
    default_n_grid,
    default_t_grid,
    optimize_sensitivity,
)
from .spectroscopy import BathModel, phase_frequency_transform, spectroscopy_sweep
from .spin_model import PhysicalConstants, detunings, load_spin_table, transition_frequencies
from .sweeps import SweepResult, write_sweep_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class RunManifest:
    """Record of one CLI run: command, resolved parameters, input hashes,
    output paths and wall-clock duration; every listed output must exist."""

    def __init__(self, command: str, parameters: dict):
        self.command = command
        self.parameters = parameters
        self.input_hashes: dict[str, str] = {}
        self.outputs: list[str] = []
        self._start = time.monotonic()

    def add_input(self, path):
        self.input_hashes[str(path)] = _sha256(Path(path))

    def add_output(self, path):
        self.outputs.append(str(path))

    def write(self, out_dir: Path):
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "input_hashes": self.input_hashes,
            "outputs": self.outputs,
            "duration_s": round(time.monotonic() - self._start, 3),
        }
        missing = [p for p in self.outputs if not Path(p).exists()]
        if missing:
            raise DDRFError(f"manifest lists missing outputs: {missing}")
        path = out_dir / "manifest.json"
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return path


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        nx, ny = int(a), int(b)
    except ValueError as exc:
        raise ConfigError(f"--grid expects RxP (e.g. 201x201), got {text!r}") from exc
    if nx < 1 or ny < 1:
        raise ConfigError("--grid sizes must be >= 1")
    return nx, ny


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"expected a comma-separated number list, got {text!r}") from exc


def _int_list(text: str) -> list[int]:
    return [int(round(v)) for v in _float_list(text)]


def _even_geomspace(lo: float, hi: float, count: int) -> list[int]:
    vals = np.geomspace(max(2.0, lo), max(2.0, hi), count)
    return sorted({max(2, int(round(v / 2.0)) * 2) for v in vals})


def _write(sweep: SweepResult, path: Path, manifest: RunManifest):
    write_sweep_csv(sweep, path)
    manifest.add_output(path)


def _load_table(args, manifest):
    path = args.config or default_spin_table_path()
    table = load_spin_table(path)
    manifest.add_input(path)
    return table


# --------------------------------------------------------------------------
# spectroscopy
# --------------------------------------------------------------------------

def cmd_spectroscopy(args) -> int:
    manifest = RunManifest("spectroscopy", _resolved(args))
    table = _load_table(args, manifest)
    constants = PhysicalConstants()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    n_rf, n_phi = _parse_grid(args.grid)
    tau = args.tau_us * 1e-6
    seq = SequenceParams(
        n_pulses=args.n, tau=tau, omega=TWO_PI * args.rabi_hz,
        omega_rf=0.0, delta_phi=0.0, mode=args.mode,
    )
    omega0 = constants.gamma_c * table.field.b_z
    span = TWO_PI * args.rf_span_khz * 1e3
    omega_rf = omega0 + np.linspace(-span, span, n_rf)
    delta_phi = np.linspace(-math.pi, math.pi, n_phi)
    bath = None
    if not args.no_bath:
        bath = BathModel(
            delta_limit=table.bath_delta_limit,
            n_bins=table.bath_n_bins,
            clamp_floor=table.bath_clamp_floor,
        )
    sweep = spectroscopy_sweep(
        table.spins, table.field, constants, bath, omega_rf, delta_phi, seq,
        table_hash=table.source_sha256,
    )
    _write(sweep, out_dir / "spectroscopy.csv", manifest)
    if args.phase_frequency:
        folded = phase_frequency_transform(sweep, tau)
        _write(folded, out_dir / "spectroscopy_wphi.csv", manifest)
    manifest.write(out_dir)
    print(f"spectroscopy: {n_rf}x{n_phi} map, min P0 = {sweep.values.min():.4f}")
    return EXIT_OK


# --------------------------------------------------------------------------
# rabi response curves (fixed total driving time)
# --------------------------------------------------------------------------

def cmd_rabi(args) -> int:
    manifest = RunManifest("rabi", _resolved(args))
    table = _load_table(args, manifest)
    constants = PhysicalConstants()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    spin = table.spin(args.spin)  # raises ConfigError for unknown labels
    freqs = transition_frequencies(spin, table.field, constants)
    n_list = _int_list(args.n_list)
    drive_time = args.driving_time_ms * 1e-3
    omega = TWO_PI * args.rabi_hz
    span = TWO_PI * args.rf_span_khz * 1e3
    omega_rf = freqs.omega1 + np.linspace(-span, span, args.points)
    d0, d1 = detunings(freqs.omega0, freqs.omega1, omega_rf)

    sim = np.zeros((args.points, len(n_list)))
    ana = np.zeros_like(sim)
    from .engine import ConditionalGate, conditional_block, decompose_rotation

    for j, n in enumerate(n_list):
        if n % 2 or n < 2:
            raise ConfigError(f"--n-list entries must be even and >= 2, got {n}")
        tau = drive_time / (2 * n)
        dphi = wrap_phase(-(d0 + d1) * tau + math.pi)
        v0, v1 = conditional_block(d0, d1, dphi, tau, omega)
        dec = decompose_rotation(ConditionalGate(v0, v1))
        sx = 1.0 - (1.0 - dec.dot) * np.sin(0.5 * n * dec.theta) ** 2
        sim[:, j] = 0.5 * (sx + 1.0)
        w_eff = effective_rabi(omega, d0, d1, tau)
        ana[:, j] = 0.5 * np.cos(2.0 * w_eff * n * tau) + 0.5

    metadata = {
        "kind": "rabi_response",
        "spin": args.spin,
        "driving_time_s": f"{drive_time:.9g}",
        "rabi_hz": f"{args.rabi_hz:.9g}",
        "larmor_hz": f"{freqs.omega0 / TWO_PI:.9g}",
        "omega1_hz": f"{freqs.omega1 / TWO_PI:.9g}",
        "spin_table_sha256": table.source_sha256,
    }

    def _sweep(vals, column):
        md = dict(metadata)
        md["column"] = column
        return SweepResult(
            x_name="rf_frequency", x_unit="Hz", x_values=omega_rf / TWO_PI,
            y_name="n_pulses", y_unit="1", y_values=np.asarray(n_list, float),
            values=vals, metadata=md,
        )

    _write(_sweep(sim, "simulated"), out_dir / "rabi.csv", manifest)
    _write(_sweep(ana, "analytic"), out_dir / "rabi_analytic.csv", manifest)
    manifest.write(out_dir)
    print(f"rabi: spin {args.spin}, N in {n_list}, worst |sim-analytic| = "
          f"{np.max(np.abs(sim - ana)):.4f}")
    return EXIT_OK


# --------------------------------------------------------------------------
# sensitivity optimization
# --------------------------------------------------------------------------

def cmd_sensitivity(args) -> int:
    manifest = RunManifest("sensitivity", _resolved(args))
    constants_kwargs = {}
    coherence = CoherenceModel()
    if args.config:
        table = load_spin_table(args.config)
        manifest.add_input(args.config)
        coherence = CoherenceModel(
            t_ref=table.coherence_t_ref, eta=table.coherence_eta,
            n_exp=table.coherence_n_exp,
        )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    deltas_hz = []
    if args.delta_hz:
        deltas_hz.extend(_float_list(args.delta_hz))
    if args.delta_log_range:
        lo, hi, count = args.delta_log_range
        deltas_hz.extend(np.geomspace(lo, hi, int(count)))
    if not deltas_hz:
        raise ConfigError("provide --delta-hz and/or --delta-log-range")
    if any(d <= 0 for d in deltas_hz):
        raise ConfigError("hyperfine couplings must be positive")

    protocols = ("resonant", "detuned") if args.protocol == "both" else (args.protocol,)
    n_list = default_n_grid(args.n_max)
    t_lo, t_hi, t_count = args.t_ms_range
    t_list = default_t_grid(t_lo * 1e-3, t_hi * 1e-3, int(t_count))
    policy = AmplitudePolicy()

    optima = {p: [] for p in protocols}
    for idx, delta_hz in enumerate(deltas_hz):
        for proto in protocols:
            result = optimize_sensitivity(
                TWO_PI * delta_hz, n_list, t_list, policy, coherence, proto
            )
            optima[proto].append(result.best)
            tag = f"delta{idx:03d}_{proto}"
            _write(result.sweep, out_dir / f"sensitivity_{tag}_vmin.csv", manifest)
            for name, sweep in result.maps.items():
                _write(sweep, out_dir / f"sensitivity_{tag}_{name}.csv", manifest)
            b = result.best
            print(
                f"best[{proto}, delta={delta_hz:g} Hz]: N={b.n_pulses} t={b.t:.6g}s "
                f"tau={b.tau:.6g}s delta1={b.delta1 / TWO_PI:.6g}Hz "
                f"omega={b.omega_set / TWO_PI:.6g}Hz v_min={b.v_min:.6g}"
            )

    if len(protocols) == 2:
        values = np.stack(
            [[b.v_min for b in optima[p]] for p in protocols], axis=-1
        )
        comparison = SweepResult(
            x_name="hyperfine_shift", x_unit="Hz",
            x_values=np.asarray(deltas_hz, float),
            y_name="protocol", y_unit="0=resonant 1=detuned",
            y_values=np.array([0.0, 1.0]),
            values=values,
            metadata={"kind": "sensitivity_vs_delta"},
        )
        _write(comparison, out_dir / "sensitivity_vs_delta.csv", manifest)

    summary = {
        proto: [
            {
                "delta_hz": deltas_hz[i],
                "n_pulses": b.n_pulses,
                "t_s": b.t,
                "tau_s": b.tau,
                "delta1_hz": b.delta1 / TWO_PI,
                "omega_set_hz": b.omega_set / TWO_PI,
                "v_min": b.v_min,
            }
            for i, b in enumerate(optima[proto])
        ]
        for proto in protocols
    }
    summary_path = out_dir / "sensitivity_summary.json"
    summary_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    manifest.add_output(summary_path)
    manifest.write(out_dir)
    return EXIT_OK


# --------------------------------------------------------------------------
# register fidelity maps
# --------------------------------------------------------------------------

def cmd_register(args) -> int:
    manifest = RunManifest("register", _resolved(args))
    table = _load_table(args, manifest)
    constants = PhysicalConstants()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    config = RegisterConfig.from_table(table)
    if args.target not in [s.label for s in config.register_spins]:
        raise ConfigError(f"target {args.target!r} is not in the register "
                          f"({' '.join(s.label for s in config.register_spins)})")

    n_lo, n_hi, n_count = args.n_range
    n_list = _even_geomspace(n_lo, n_hi, int(n_count))
    tau_lo, tau_hi, tau_count = args.tau_us_range
    tau_list = np.geomspace(tau_lo * 1e-6, tau_hi * 1e-6, int(tau_count))
    echo = not args.no_echo
    final_level = "echo" if echo else "t2star"

    levels = FIDELITY_LEVELS if args.contributions else (final_level,)
    best_result = None
    for level in levels:
        result = fidelity_map(
            config, args.target, n_list, tau_list, table.field, constants,
            echo=echo, level=level,
        )
        suffix = f"_{level}" if args.contributions else ""
        _write(result.sweep, out_dir / f"register_{args.target}{suffix}.csv", manifest)
        if level == final_level:
            best_result = result

    if best_result is None:  # contributions without the final level cannot happen
        raise DDRFError("no final-level map produced")
    if not best_result.feasible.any():
        print("register: no feasible cells (amplitude caps bind everywhere)",
              file=sys.stderr)
        return EXIT_INFEASIBLE

    out = best_result.best_outcome
    summary = {
        "target": args.target,
        "level": best_result.level,
        "best_n_pulses": best_result.best_n,
        "best_tau_s": best_result.best_tau,
        "best_gate_time_s": 2 * best_result.best_n * best_result.best_tau,
        "omega_set_hz": out.omega_set / TWO_PI,
        "fidelity": out.fidelity,
        "lambda_t2": out.lambda_t2,
        "lambda_bath": out.lambda_bath,
        "feasible": out.feasible,
        "feasible_cells": int(best_result.feasible.sum()),
        "total_cells": int(best_result.feasible.size),
    }
    summary_path = out_dir / f"register_{args.target}_summary.json"
    summary_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    manifest.add_output(summary_path)
    manifest.write(out_dir)
    print(f"register: target {args.target} max F = {out.fidelity:.4f} at "
          f"N={best_result.best_n}, tau={best_result.best_tau * 1e6:.2f} us")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser plumbing
# --------------------------------------------------------------------------

def _resolved(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def _add_common(p):
    p.add_argument("--config", help="spin-table config file (default: packaged table)")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads (results are thread-count independent)")
    p.add_argument("--seed", type=int, default=0,
                   help="reserved; all current computations are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddrf",
        description="Dynamically-decoupled RF gate simulation and optimization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectroscopy", help="(rf frequency x phase increment) signal map")
    _add_common(p)
    p.add_argument("--tau-us", type=float, default=29.632)
    p.add_argument("--n", type=int, default=24, help="number of decoupling pulses")
    p.add_argument("--rabi-hz", type=float, default=356.0)
    p.add_argument("--rf-span-khz", type=float, default=50.0,
                   help="half-span of the RF axis around the bare Larmor frequency")
    p.add_argument("--grid", default="201x201", help="RF x phase grid, e.g. 201x201")
    p.add_argument("--mode", choices=("conditional", "unconditional"),
                   default="conditional")
    p.add_argument("--no-bath", action="store_true", help="drop the statistical bath")
    p.add_argument("--phase-frequency", action="store_true",
                   help="also write the folded phase-frequency map")
    p.set_defaults(func=cmd_spectroscopy)

    p = sub.add_parser("rabi", help="response vs RF frequency at fixed driving time")
    _add_common(p)
    p.add_argument("--spin", required=True, help="target spin label, e.g. C0")
    p.add_argument("--n-list", default="24,48,102")
    p.add_argument("--driving-time-ms", type=float, default=1.4)
    p.add_argument("--rabi-hz", type=float, default=280.0)
    p.add_argument("--rf-span-khz", type=float, default=50.0)
    p.add_argument("--points", type=int, default=201)
    p.set_defaults(func=cmd_rabi)

    p = sub.add_parser("sensitivity", help="single-spin sensing optimization")
    _add_common(p)
    p.add_argument("--delta-hz", help="comma-separated hyperfine couplings (Hz)")
    p.add_argument("--delta-log-range", nargs=3, type=float,
                   metavar=("MIN_HZ", "MAX_HZ", "COUNT"))
    p.add_argument("--n-max", type=int, default=4096)
    p.add_argument("--t-ms-range", nargs=3, type=float, default=(0.1, 100.0, 100),
                   metavar=("MIN_MS", "MAX_MS", "COUNT"))
    p.add_argument("--protocol", choices=("resonant", "detuned", "both"),
                   default="both")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("register", help="multi-qubit register fidelity map")
    _add_common(p)
    p.add_argument("--target", required=True, help="register spin label, e.g. C1")
    p.add_argument("--n-range", nargs=3, type=float, default=(2, 2048, 41),
                   metavar=("MIN", "MAX", "COUNT"))
    p.add_argument("--tau-us-range", nargs=3, type=float, default=(2.0, 120.0, 41),
                   metavar=("MIN_US", "MAX_US", "COUNT"))
    p.add_argument("--contributions", action="store_true",
                   help="write the cumulative infidelity-channel maps")
    p.add_argument("--no-echo", action="store_true",
                   help="skip the post-gate echo correction")
    p.set_defaults(func=cmd_register)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DDRFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
