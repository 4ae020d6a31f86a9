"""Spectroscopy signals of many-spin environments.

The electron, prepared in a superposition, loses coherence when the sequence
resonantly rotates a nuclear spin; the signal P0 in [0, 1] is the recovered
coherence.  Identified spins contribute individual factors; the weakly
coupled remainder enters as a statistically binned bath whose per-shift
signal is raised to the expected number of spins at that shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import (
    ConditionalGate,
    SequenceParams,
    TWO_PI,
    conditional_block,
    decompose_rotation,
)
from .errors import InvalidInputError
from .spin_model import (
    FieldConfig,
    NuclearSpinSpec,
    PhysicalConstants,
    detunings,
    transition_frequencies,
)
from .sweeps import SweepResult


@dataclass(frozen=True)
class BathModel:
    """Statistical bath of weakly coupled spins with |shift| < delta_limit.

    delta_limit is angular (rad/s); n_bins must be even so no bin center
    sits at zero shift, where the spin density diverges; per-bin signals are
    clamped to [clamp_floor, 1] before fractional exponentiation.
    """

    delta_limit: float = TWO_PI * 6e3
    n_bins: int = 300
    clamp_floor: float = 1e-6

    def __post_init__(self):
        if not self.delta_limit > 0:
            raise InvalidInputError("delta_limit must be > 0")
        if self.n_bins < 2 or self.n_bins % 2 != 0:
            raise InvalidInputError("n_bins must be even and >= 2")
        if not (0 < self.clamp_floor < 1):
            raise InvalidInputError("clamp_floor must lie in (0, 1)")

    def bin_centers_and_width(self):
        edges = np.linspace(-self.delta_limit, self.delta_limit, self.n_bins + 1)
        centers = 0.5 * (edges[:-1] + edges[1:])
        return centers, edges[1] - edges[0]


def _sigma_x_cells(delta0, delta1, delta_phi, seq: SequenceParams):
    """<sigma_x> over broadcastable detuning/phase grids for one sequence."""
    v0, v1 = conditional_block(
        delta0, delta1, delta_phi, seq.tau, seq.omega, seq.dead_time
    )
    dec = decompose_rotation(ConditionalGate(v0, v1))
    total_angle = 0.5 * seq.n_pulses * dec.theta
    return 1.0 - (1.0 - dec.dot) * np.sin(total_angle) ** 2


def spin_sigma_x(spin, seq, field, constants):
    """<sigma_x> contribution of one identified spin (scalar in [-1, 1])."""
    freqs = transition_frequencies(spin, field, constants)
    d0, d1 = detunings(freqs.omega0, freqs.omega1, seq.omega_rf)
    return float(_sigma_x_cells(d0, d1, seq.delta_phi, seq))


def single_spin_signal(spin, seq, field, constants):
    """P0 for a single identified spin."""
    return 0.5 * (spin_sigma_x(spin, seq, field, constants) + 1.0)


def bath_density(delta, constants: PhysicalConstants):
    """Mean density of parallel hyperfine shifts, spins per (rad/s).

    rho(delta) = pi^2 * alpha * rho_13C / delta^2 with alpha the dipolar
    prefactor; even in delta and divergent at zero shift.
    """
    delta = np.asarray(delta, dtype=float)
    if np.any(delta == 0):
        raise InvalidInputError("bath density is undefined at zero shift")
    alpha = constants.dipolar_alpha()
    return math.pi**2 * alpha * constants.rho_13c / delta**2


_BATH_CHUNK_ELEMENTS = 300_000


def _bath_log_sigma_x(omega_rf, delta_phi, seq, field, constants, bath):
    """log of the bath <sigma_x> factor, broadcast over omega_rf/delta_phi.

    Bins are stacked on a leading axis and processed in chunks so that small
    inputs vectorize fully while large sweep grids stay within memory.
    """
    omega0 = constants.gamma_c * field.b_z
    centers, width = bath.bin_centers_and_width()
    weights = bath_density(centers, constants) * width
    omega_rf = np.asarray(omega_rf, dtype=float)
    delta_phi = np.asarray(delta_phi, dtype=float)
    grid_shape = np.broadcast_shapes(omega_rf.shape, delta_phi.shape)
    grid_size = int(np.prod(grid_shape, dtype=int)) or 1
    chunk = max(1, _BATH_CHUNK_ELEMENTS // grid_size)

    out = np.zeros(grid_shape)
    d0 = omega_rf - omega0
    pad = (None,) * len(grid_shape)
    for k in range(0, centers.size, chunk):
        shifts = centers[k:k + chunk][(slice(None),) + pad]
        sx = _sigma_x_cells(d0, d0 + shifts, delta_phi, seq)
        logs = np.log(np.clip(sx, bath.clamp_floor, 1.0))
        out += np.tensordot(weights[k:k + chunk], logs, axes=(0, 0))
    return out


def bath_signal(seq, field, constants, bath: BathModel):
    """P0 of the binned statistical spin bath."""
    log_sx = _bath_log_sigma_x(
        np.asarray(seq.omega_rf, dtype=float), seq.delta_phi, seq, field, constants, bath
    )
    return float(0.5 * (np.exp(log_sx) + 1.0))


def composite_signal(spins, seq, field, constants, bath: BathModel | None = None):
    """P0 of identified spins times the bath: product of <sigma_x> factors."""
    sx = 1.0
    for spin in spins:
        sx *= spin_sigma_x(spin, seq, field, constants)
    if bath is not None:
        log_b = _bath_log_sigma_x(
            np.asarray(seq.omega_rf, dtype=float), seq.delta_phi, seq, field, constants, bath
        )
        sx *= float(np.exp(log_b))
    return 0.5 * (sx + 1.0)


def spectroscopy_sweep(
    spins,
    field: FieldConfig,
    constants: PhysicalConstants,
    bath: BathModel | None,
    omega_rf_grid,
    delta_phi_grid,
    seq_template: SequenceParams,
    table_hash: str = "",
) -> SweepResult:
    """Composite P0 over an (rf frequency x phase increment) grid.

    Grids are angular (rad/s, rad) and must be monotone; cells are
    independent and the result is deterministic.  Axis values are written in
    external units (Hz for the RF axis).
    """
    omega_rf = np.asarray(omega_rf_grid, dtype=float)
    delta_phi = np.asarray(delta_phi_grid, dtype=float)
    if omega_rf.size == 0 or delta_phi.size == 0:
        raise InvalidInputError("sweep grids must be non-empty")
    for grid, name in ((omega_rf, "omega_rf"), (delta_phi, "delta_phi")):
        d = np.diff(grid)
        if d.size and not (np.all(d > 0) or np.all(d < 0)):
            raise InvalidInputError(f"{name} grid must be monotone")

    omega0 = constants.gamma_c * field.b_z
    col = omega_rf[:, None]
    row = delta_phi[None, :]
    sx = np.ones((omega_rf.size, delta_phi.size))
    for spin in spins:
        freqs = transition_frequencies(spin, field, constants)
        d0, d1 = detunings(freqs.omega0, freqs.omega1, col)
        sx *= _sigma_x_cells(d0, d1, row, seq_template)
    if bath is not None:
        sx *= np.exp(
            _bath_log_sigma_x(col, row, seq_template, field, constants, bath)
        )
    values = 0.5 * (sx + 1.0)

    metadata = {
        "kind": "spectroscopy",
        "n_pulses": str(seq_template.n_pulses),
        "tau_s": f"{seq_template.tau:.9g}",
        "rabi_hz": f"{seq_template.omega / TWO_PI:.9g}",
        "mode": seq_template.mode,
        "dead_time_s": f"{seq_template.dead_time:.9g}",
        "b_z_tesla": f"{field.b_z:.9g}",
        "larmor_hz": f"{omega0 / TWO_PI:.9g}",
        "n_spins": str(len(list(spins))),
        "grid": f"{omega_rf.size}x{delta_phi.size}",
    }
    if bath is not None:
        metadata["bath_delta_limit_hz"] = f"{bath.delta_limit / TWO_PI:.9g}"
        metadata["bath_n_bins"] = str(bath.n_bins)
        metadata["bath_clamp_floor"] = f"{bath.clamp_floor:.9g}"
    if table_hash:
        metadata["spin_table_sha256"] = table_hash

    return SweepResult(
        x_name="rf_frequency",
        x_unit="Hz",
        x_values=omega_rf / TWO_PI,
        y_name="phase_increment",
        y_unit="rad",
        y_values=delta_phi,
        values=values,
        metadata=metadata,
    )


def phase_frequency_transform(sweep: SweepResult, tau: float) -> SweepResult:
    """Remap an (rf frequency x phase increment) sweep to folded axes.

    The phase increments act as a frequency ramp omega_phi = omega_rf +
    delta_phi/(2 tau); spins sit at omega_phi - pi/(2 tau) = omega_bar modulo
    pi/tau, so each column is folded onto a ring of bandwidth 1/(2 tau) (in
    Hz) and resampled onto a common grid by periodic linear interpolation.
    The x axis becomes the detuning from the bare Larmor frequency.
    """
    if sweep.x_name != "rf_frequency" or sweep.y_name != "phase_increment":
        raise InvalidInputError(
            "phase_frequency_transform needs (rf_frequency, phase_increment) axes"
        )
    if "larmor_hz" not in sweep.metadata:
        raise InvalidInputError("sweep metadata lacks larmor_hz")
    if not tau > 0:
        raise InvalidInputError("tau must be > 0")
    larmor_hz = float(sweep.metadata["larmor_hz"])

    period = 1.0 / (2.0 * tau)  # fold bandwidth in Hz
    phi = sweep.y_values
    n_phi = phi.size
    if n_phi < 2:
        raise InvalidInputError("phase axis must have at least 2 points")
    span = phi[-1] - phi[0]
    full_circle = abs(abs(span) - TWO_PI) < 1e-9
    n_out = n_phi - 1 if full_circle else n_phi
    y_out = np.arange(n_out) * period / n_out

    values = np.empty((sweep.x_values.size, n_out))
    for i, f_rf in enumerate(sweep.x_values):
        folded = np.mod(f_rf + phi / (4.0 * math.pi * tau) - 0.25 / tau, period)
        order = np.argsort(folded, kind="stable")
        ys = folded[order]
        vs = sweep.values[i, order]
        ys, inverse = np.unique(ys, return_inverse=True)
        if ys.size != vs.size:  # duplicated fold positions: average them
            acc = np.zeros(ys.size)
            cnt = np.zeros(ys.size)
            np.add.at(acc, inverse, vs)
            np.add.at(cnt, inverse, 1.0)
            vs = acc / cnt
        # periodic padding for interpolation across the wrap point
        ys_ext = np.concatenate(([ys[-1] - period], ys, [ys[0] + period]))
        vs_ext = np.concatenate(([vs[-1]], vs, [vs[0]]))
        values[i] = np.interp(y_out, ys_ext, vs_ext)

    metadata = dict(sweep.metadata)
    metadata["kind"] = "spectroscopy_phase_frequency"
    metadata["fold_period_hz"] = f"{period:.9g}"
    metadata["fold_tau_s"] = f"{tau:.9g}"
    return SweepResult(
        x_name="detuning0",
        x_unit="Hz",
        x_values=sweep.x_values - larmor_hz,
        y_name="phase_frequency_offset",
        y_unit="Hz",
        y_values=y_out,
        values=values,
        metadata=metadata,
    )
