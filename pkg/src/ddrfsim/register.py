"""Multi-qubit register gates: selectivity bounds, composed unitaries,
dephasing channels and (N, tau) fidelity maps.

The register holds one electron and M nuclear qubits.  Each nuclear spin
evolves under its own electron-conditioned pair (w0, w1); because every
factor is diagonal in the electron state and acts on a distinct nuclear
slot, the composed unitary is an exact product independent of concatenation
order.  Decoherence enters through an electron dephasing channel (strength
lambda) applied after the unitary, and through quasi-static field sampling
for the nuclear T2*.
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
    reconstruct_rotation,
    resonant_phase_increment,
    rz,
    sinc,
)
from .errors import InvalidInputError
from .fidelity import average_gate_fidelity, average_gate_fidelity_pauli_sum  # noqa: F401
from .sensing import AmplitudePolicy, CoherenceModel, apply_amplitude_policy, decoherence_exponent
from .spectroscopy import BathModel, _bath_log_sigma_x, _sigma_x_cells
from .spin_model import (
    FieldConfig,
    NuclearSpinSpec,
    PhysicalConstants,
    SpinTable,
    detunings,
    transition_frequencies,
)
from .sweeps import SweepResult

_SQRT15 = math.sqrt(15.0)
_MAX_REGISTER = 10

#: cumulative infidelity channels, in presentation order
FIDELITY_LEVELS = ("single", "register", "bath", "t2", "t2star", "echo")


@dataclass(frozen=True)
class RegisterConfig:
    """Register spins (the qubits), identified bystanders, and the noise model."""

    register_spins: tuple
    bystander_spins: tuple = ()
    bath: BathModel | None = None
    coherence: CoherenceModel = CoherenceModel()
    t2_star_nuclear: float = 10e-3
    n_field_samples: int = 10
    field_range_sigmas: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "register_spins", tuple(self.register_spins))
        object.__setattr__(self, "bystander_spins", tuple(self.bystander_spins))
        labels = [s.label for s in self.register_spins]
        if len(labels) < 1:
            raise InvalidInputError("register needs at least one spin")
        if len(set(labels)) != len(labels):
            raise InvalidInputError("register labels must be unique")
        if not self.t2_star_nuclear > 0:
            raise InvalidInputError("t2_star_nuclear must be > 0")
        if self.n_field_samples < 1:
            raise InvalidInputError("n_field_samples must be >= 1")

    @classmethod
    def from_table(cls, table: SpinTable) -> "RegisterConfig":
        if not table.register_labels:
            raise InvalidInputError(f"{table.source_path}: no [register] spins configured")
        register = tuple(table.spin(lbl) for lbl in table.register_labels)
        bystanders = tuple(
            s for s in table.spins if s.label not in table.register_labels
        )
        return cls(
            register_spins=register,
            bystander_spins=bystanders,
            bath=BathModel(
                delta_limit=table.bath_delta_limit,
                n_bins=table.bath_n_bins,
                clamp_floor=table.bath_clamp_floor,
            ),
            coherence=CoherenceModel(
                t_ref=table.coherence_t_ref,
                eta=table.coherence_eta,
                n_exp=table.coherence_n_exp,
            ),
            t2_star_nuclear=table.t2_star_nuclear,
            n_field_samples=table.n_field_samples,
            field_range_sigmas=table.field_range_sigmas,
        )

    def target_index(self, label: str) -> int:
        for k, s in enumerate(self.register_spins):
            if s.label == label:
                return k
        raise InvalidInputError(f"target {label!r} is not in the register")


@dataclass(frozen=True)
class GateOutcome:
    fidelity: float
    lambda_t2: float
    lambda_bath: float
    omega_set: float
    feasible: bool

    def __post_init__(self):
        if not (0.0 <= self.fidelity <= 1.0):
            raise InvalidInputError("fidelity must lie in [0, 1]")


@dataclass(frozen=True)
class SelectivityReport:
    rf_bound_ok: bool
    phase_bound_ok: bool
    min_gate_time: float
    crosstalk_free_detuning: float


def selectivity_bounds(
    target: NuclearSpinSpec, bystander: NuclearSpinSpec, n_pulses: int, tau: float
) -> SelectivityReport:
    """Evaluate the crosstalk bounds for a target/bystander pair.

    rf_bound: the hyperfine difference must exceed the single-pulse
    bandwidth pi/tau.  phase_bound: the mean-frequency difference, folded
    modulo pi/tau, must exceed sqrt(15) pi/(4 N tau).  min_gate_time solves
    the phase bound with equality (unfolded difference); identical spins give
    an infinite sentinel.
    """
    if not (tau > 0 and n_pulses >= 1):
        raise InvalidInputError("tau and n_pulses must be positive")
    diff = abs(target.delta - bystander.delta)
    period = math.pi / tau
    rf_bound_ok = diff >= period

    half_diff = np.mod(0.5 * target.delta, period) - np.mod(0.5 * bystander.delta, period)
    circ = abs(half_diff)
    circ = min(circ, period - circ)
    phase_bound_ok = circ >= _SQRT15 * math.pi / (4.0 * n_pulses * tau)

    min_gate_time = _SQRT15 * math.pi / diff if diff > 0 else math.inf
    return SelectivityReport(
        rf_bound_ok=bool(rf_bound_ok),
        phase_bound_ok=bool(phase_bound_ok),
        min_gate_time=float(min_gate_time),
        crosstalk_free_detuning=_SQRT15 * math.pi / (2.0 * n_pulses * tau),
    )


# --------------------------------------------------------------------------
# Composed register unitaries
# --------------------------------------------------------------------------

def _branch_pairs(config, seq, field, constants, db=0.0):
    """Per-register-spin full-sequence pairs as stacked arrays.

    Returns (w0, w1) of shape (n_spins, *offset_shape, 2, 2).  A field
    offset db shifts every nuclear frequency by gamma_c*db while the RF
    frequency and phase rule stay fixed at their calibrated values.
    """
    shift = constants.gamma_c * np.asarray(db, dtype=float)
    freqs = [transition_frequencies(s, field, constants) for s in config.register_spins]
    pad = (None,) * shift.ndim
    omega0 = np.array([f.omega0 for f in freqs])[(slice(None),) + pad]
    omega1 = np.array([f.omega1 for f in freqs])[(slice(None),) + pad]
    d0, d1 = detunings(omega0 + shift, omega1 + shift, seq.omega_rf)
    v0, v1 = conditional_block(d0, d1, seq.delta_phi, seq.tau, seq.omega, seq.dead_time)
    k = seq.n_pulses // 2
    return np.linalg.matrix_power(v0, k), np.linalg.matrix_power(v1, k)


def _unconditional_z_phase(w0, w1):
    """Virtual-Z angle removing the electron-averaged z phase of an idler.

    Wrapped branch phases leave the half-sum ambiguous by pi; the candidate
    maximizing overlap with the identity on both branches is chosen.
    """
    phi0 = np.angle(w0[..., 1, 1] * np.conj(w0[..., 0, 0]))
    phi1 = np.angle(w1[..., 1, 1] * np.conj(w1[..., 0, 0]))
    base = 0.5 * (phi0 + phi1)

    def score(alpha):
        s = 0.0
        for w in (w0, w1):
            s += np.abs(
                np.exp(0.5j * alpha) * w[..., 0, 0] + np.exp(-0.5j * alpha) * w[..., 1, 1]
            )
        return s
    alt = base + math.pi
    return np.where(score(base) >= score(alt), base, alt)


def _apply_corrections(pairs, virtual_z, echo_angle=None):
    """Virtual-Z per spin plus an optional common echo z-rotation on all
    register qubits; virtual_z has one angle per spin (0 for the target)."""
    w0, w1 = pairs
    pad = (None,) * (w0.ndim - 3)
    corr = rz(-np.asarray(virtual_z, dtype=float))[(slice(None),) + pad]
    w0, w1 = corr @ w0, corr @ w1
    if echo_angle is not None:
        corr = rz(echo_angle)
        w0, w1 = corr @ w0, corr @ w1
    return w0, w1


def _kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def _compose_register_unitary(pairs):
    """(M+1)-qubit matrix: electron slot first, register spins in order."""
    w0, w1 = pairs
    m = w0.shape[0]
    dim = 2 ** (m + 1)
    u = np.zeros((dim, dim), dtype=complex)
    half = dim // 2
    u[:half, :half] = _kron_chain(list(w0))
    u[half:, half:] = _kron_chain(list(w1))
    return u


def ideal_register_unitary(config: RegisterConfig, target_label: str) -> np.ndarray:
    """Conditional +-pi/2 x rotation on the target, identity on idlers."""
    t_idx = config.target_index(target_label)
    m = len(config.register_spins)
    eye = np.eye(2, dtype=complex)
    blocks = []
    for sign in (+1.0, -1.0):
        mats = [eye] * m
        mats[t_idx] = reconstruct_rotation(sign * 0.5 * math.pi, [1.0, 0.0, 0.0])
        blocks.append(_kron_chain(mats))
    dim = 2 ** (m + 1)
    u = np.zeros((dim, dim), dtype=complex)
    u[: dim // 2, : dim // 2] = blocks[0]
    u[dim // 2:, dim // 2:] = blocks[1]
    return u


def register_gate_unitary(config, target_label, seq, field, constants):
    """Full (M+1)-qubit gate unitary with idler virtual-Z corrections applied.

    Returns (unitary, phase_report) where phase_report maps each register
    label to its branch z phases and the correction applied (0 for the
    target).  Guarded against register sizes beyond 10 nuclear qubits.
    """
    m = len(config.register_spins)
    if m > _MAX_REGISTER:
        raise InvalidInputError(f"register too large ({m} spins > {_MAX_REGISTER})")
    t_idx = config.target_index(target_label)
    pairs = _branch_pairs(config, seq, field, constants)
    virtual_z = _virtual_z_table(pairs, t_idx)
    corrected = _apply_corrections(pairs, virtual_z)
    w0, w1 = pairs
    report = {}
    for k, spin in enumerate(config.register_spins):
        report[spin.label] = {
            "phi0": float(np.angle(w0[k, 1, 1] * np.conj(w0[k, 0, 0]))),
            "phi1": float(np.angle(w1[k, 1, 1] * np.conj(w1[k, 0, 0]))),
            "virtual_z": float(virtual_z[k]),
        }
    return _compose_register_unitary(corrected), report


def _virtual_z_table(pairs, target_index):
    """Per-spin virtual-Z angles (target entry forced to zero)."""
    w0, w1 = pairs
    angles = np.asarray(_unconditional_z_phase(w0, w1), dtype=float)
    angles[target_index] = 0.0
    return angles


def _branch_traces(pairs, target_index):
    """Tr(U_t^dag U_c) per electron branch, as products of 2x2 traces.

    The ideal gate is an x rotation of +-pi/2 on the target and identity on
    idlers, so each branch trace factorizes over the nuclear slots.
    """
    ideal = (
        reconstruct_rotation(0.5 * math.pi, [1.0, 0.0, 0.0]),
        reconstruct_rotation(-0.5 * math.pi, [1.0, 0.0, 0.0]),
    )
    traces = []
    for e, w in enumerate(pairs):
        terms = w[..., 0, 0] + w[..., 1, 1]
        target_term = np.einsum("ij,...ij->...", ideal[e].conj(), w[target_index])
        terms = np.concatenate(
            [terms[:target_index], target_term[None], terms[target_index + 1:]], axis=0
        )
        traces.append(np.prod(terms, axis=0))
    return traces


def _traces_to_fidelities(tr0, tr1, dim):
    f_plain = (np.abs(tr0 + tr1) ** 2 + dim) / (dim * (dim + 1))
    f_z = (np.abs(tr0 - tr1) ** 2 + dim) / (dim * (dim + 1))
    return f_plain, f_z


# --------------------------------------------------------------------------
# Dephasing channels
# --------------------------------------------------------------------------

def dephasing_lambdas(config, seq, field, constants):
    """(lambda_T2, lambda_bath) for the sequence.

    lambda_T2 = exp(-chi(N, 2 N tau)); lambda_bath is the product of the
    bystander <sigma_x> factors and the binned-bath factor, clamped to [0, 1].
    """
    chi = decoherence_exponent(seq.n_pulses, seq.total_time, config.coherence)
    lam_t2 = float(np.exp(-chi))
    sx = 1.0
    if config.bystander_spins:
        freqs = [transition_frequencies(s, field, constants) for s in config.bystander_spins]
        d0, d1 = detunings(
            np.array([f.omega0 for f in freqs]),
            np.array([f.omega1 for f in freqs]),
            seq.omega_rf,
        )
        sx = float(np.prod(_sigma_x_cells(d0, d1, seq.delta_phi, seq)))
    if config.bath is not None:
        sx *= float(
            np.exp(
                _bath_log_sigma_x(
                    np.asarray(seq.omega_rf, dtype=float),
                    seq.delta_phi, seq, field, constants, config.bath,
                )
            )
        )
    return lam_t2, float(np.clip(sx, 0.0, 1.0))


def apply_dephasing(f_terms, lam):
    """Fidelity of the unitary followed by the electron dephasing channel:
    (1+lam)/2 * F(U_t, U_c) + (1-lam)/2 * F(U_t, Z' U_c)."""
    if not 0.0 <= lam <= 1.0:
        raise InvalidInputError("lambda must lie in [0, 1]")
    f_plain, f_z = f_terms
    return 0.5 * (1.0 + lam) * f_plain + 0.5 * (1.0 - lam) * f_z


def field_offsets_and_weights(config, constants):
    """Quasi-static field samples for nuclear T2* and their normalized weights.

    sigma_B = sqrt(2)/(gamma_c T2*); a single sample degenerates to zero
    offset, otherwise the grid spans +-field_range_sigmas sigma_B
    (endpoints included) with Gaussian-pdf weights renormalized to 1.
    """
    sigma_b = math.sqrt(2.0) / (constants.gamma_c * config.t2_star_nuclear)
    n = config.n_field_samples
    if n == 1:
        return np.array([0.0]), np.array([1.0])
    span = config.field_range_sigmas * sigma_b
    offsets = np.linspace(-span, span, n)
    weights = np.exp(-0.5 * (offsets / sigma_b) ** 2)
    return offsets, weights / weights.sum()


def t2star_average(config, target_label, seq, field, constants, echo=True) -> GateOutcome:
    """Average gate fidelity over quasi-static field offsets.

    Virtual-Z corrections are calibrated at zero offset; the optional echo
    removes the offset-induced common z phase gamma_c*dB*2N*tau on every
    register qubit.  The electron dephasing lambdas are offset-independent.
    """
    t_idx = config.target_index(target_label)
    m = len(config.register_spins)
    dim = 2 ** (m + 1)
    lam_t2, lam_bath = dephasing_lambdas(config, seq, field, constants)
    lam = float(np.clip(lam_t2 * lam_bath, 0.0, 1.0))

    base_pairs = _branch_pairs(config, seq, field, constants)
    virtual_z = _virtual_z_table(base_pairs, t_idx)

    offsets, weights = field_offsets_and_weights(config, constants)
    pairs = _branch_pairs(config, seq, field, constants, db=offsets)
    echo_angle = None
    if echo:
        # cancels the z phase acquired from the offset over the gate time
        echo_angle = constants.gamma_c * offsets * seq.total_time
    corrected = _apply_corrections(pairs, virtual_z, echo_angle)
    tr0, tr1 = _branch_traces(corrected, t_idx)
    f_plain, f_z = _traces_to_fidelities(tr0, tr1, dim)
    fid = np.sum(weights * apply_dephasing((f_plain, f_z), lam))
    return GateOutcome(
        fidelity=float(np.clip(fid, 0.0, 1.0)),
        lambda_t2=lam_t2,
        lambda_bath=lam_bath,
        omega_set=seq.omega,
        feasible=True,
    )


# --------------------------------------------------------------------------
# (N, tau) fidelity maps
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FidelityMapResult:
    sweep: SweepResult
    feasible: np.ndarray
    best_n: int
    best_tau: float
    best_outcome: GateOutcome
    level: str


def _single_cell_fidelity(config, target_label, seq, field, constants, level, echo):
    """(fidelity, lambda_t2, lambda_bath) of one cell at the requested level."""
    t_idx = config.target_index(target_label)
    m = len(config.register_spins)
    if level == "single":
        sub = RegisterConfig(
            register_spins=(config.register_spins[t_idx],),
            coherence=config.coherence,
            t2_star_nuclear=config.t2_star_nuclear,
            n_field_samples=config.n_field_samples,
            field_range_sigmas=config.field_range_sigmas,
        )
        pairs = _branch_pairs(sub, seq, field, constants)
        tr0, tr1 = _branch_traces(pairs, 0)
        f_plain, _ = _traces_to_fidelities(tr0, tr1, 4)
        return float(f_plain), 1.0, 1.0

    dim = 2 ** (m + 1)
    if level in ("register", "bath", "t2"):
        pairs = _branch_pairs(config, seq, field, constants)
        virtual_z = _virtual_z_table(pairs, t_idx)
        corrected = _apply_corrections(pairs, virtual_z)
        tr0, tr1 = _branch_traces(corrected, t_idx)
        f_plain, f_z = _traces_to_fidelities(tr0, tr1, dim)
        if level == "register":
            return float(f_plain), 1.0, 1.0
        lam_t2, lam_bath = dephasing_lambdas(config, seq, field, constants)
        lam = lam_bath if level == "bath" else lam_t2 * lam_bath
        fid = float(apply_dephasing((f_plain, f_z), float(np.clip(lam, 0.0, 1.0))))
        return fid, lam_t2, lam_bath

    use_echo = echo and level == "echo"
    out = t2star_average(config, target_label, seq, field, constants, echo=use_echo)
    return out.fidelity, out.lambda_t2, out.lambda_bath


def fidelity_map(
    config: RegisterConfig,
    target_label: str,
    n_list,
    tau_list,
    field: FieldConfig,
    constants: PhysicalConstants,
    policy: AmplitudePolicy | None = None,
    echo: bool = True,
    level: str = "echo",
) -> FidelityMapResult:
    """Register average-gate-fidelity map over (pulse number, tau).

    Per cell the RF frequency sits on the target's driven transition, the
    amplitude is solved from omega_eff*N*tau = pi/2 and capped by the policy
    (capped cells are marked infeasible but still evaluated), and the phase
    increment follows the resonance rule with the AC-Stark correction.
    """
    if level not in FIDELITY_LEVELS:
        raise InvalidInputError(f"level must be one of {FIDELITY_LEVELS}")
    policy = policy or AmplitudePolicy()
    target = config.register_spins[config.target_index(target_label)]
    freqs = transition_frequencies(target, field, constants)
    omega_rf = freqs.omega1
    d0_t, d1_t = detunings(freqs.omega0, freqs.omega1, omega_rf)

    n_arr = np.asarray(n_list, dtype=int)
    tau_arr = np.asarray(tau_list, dtype=float)
    if np.any(n_arr < 2) or np.any(n_arr % 2):
        raise InvalidInputError("n grid must contain even pulse numbers >= 2")
    if np.any(tau_arr <= 0):
        raise InvalidInputError("tau grid must be positive")

    values = np.zeros((n_arr.size, tau_arr.size))
    feasible = np.zeros_like(values, dtype=bool)
    best = None
    for i, n in enumerate(n_arr):
        for j, tau in enumerate(tau_arr):
            bracket = float(sinc(d1_t * tau) - sinc(d0_t * tau))
            if bracket > 0:
                omega_raw = 0.5 * math.pi / (n * tau * bracket)
                omega_set = float(apply_amplitude_policy(omega_raw, tau, policy))
                ok = bool(omega_set >= omega_raw * (1.0 - 1e-12))
            else:
                omega_set = float(apply_amplitude_policy(np.inf, tau, policy))
                ok = False
            inc = resonant_phase_increment(
                d0_t, d1_t, tau, "conditional", omega_set, ac_stark=True
            )
            seq = SequenceParams(
                n_pulses=int(n), tau=float(tau), omega=omega_set,
                omega_rf=omega_rf, delta_phi=float(inc.delta_phi),
            )
            fid, lam_t2, lam_bath = _single_cell_fidelity(
                config, target_label, seq, field, constants, level, echo
            )
            values[i, j] = fid
            feasible[i, j] = ok
            if best is None or fid > best[0]:
                best = (fid, int(n), float(tau), omega_set, ok, lam_t2, lam_bath)

    metadata = {
        "kind": "register_fidelity",
        "target": target_label,
        "level": level,
        "echo": str(bool(echo)),
        "register": " ".join(s.label for s in config.register_spins),
        "n_bystanders": str(len(config.bystander_spins)),
        "rf_frequency_hz": f"{omega_rf / TWO_PI:.9g}",
        "omega_tau_cap": f"{policy.omega_tau_cap:.9g}",
        "omega_abs_cap_hz": f"{policy.omega_abs_cap / TWO_PI:.9g}",
        "t2_star_s": f"{config.t2_star_nuclear:.9g}",
        "n_field_samples": str(config.n_field_samples),
        "feasible_cells": str(int(feasible.sum())),
    }
    sweep = SweepResult(
        x_name="n_pulses", x_unit="1", x_values=n_arr.astype(float),
        y_name="tau", y_unit="s", y_values=tau_arr,
        values=values, metadata=metadata,
    )
    fid, n_best, tau_best, omega_best, ok, lam_t2, lam_bath = best
    outcome = GateOutcome(
        fidelity=fid, lambda_t2=lam_t2, lambda_bath=lam_bath,
        omega_set=omega_best, feasible=ok,
    )
    return FidelityMapResult(
        sweep=sweep, feasible=feasible, best_n=n_best, best_tau=tau_best,
        best_outcome=outcome, level=level,
    )
