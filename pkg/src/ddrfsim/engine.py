"""Exact and analytical construction of dynamically-decoupled RF gates.

The unit cell of the sequence is tau - pi - 2tau - pi - tau; during the RF
segments the nuclear spin of a two-level electron-nuclear pair evolves under

    H_i = delta_i * I_z + Omega * (cos(phi) I_x + sin(phi) I_y)

for electron state |i>, with delta_i the RF detuning from that state's
nuclear transition.  Everything here is closed-form 2x2 algebra, so all
functions broadcast over leading axes and sweeps can be evaluated as stacked
matrix products.

Angles are radians, frequencies angular (rad/s), times seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError, UndefinedAxesError
from .fidelity import average_gate_fidelity

TWO_PI = 2.0 * math.pi

# First positive root of the second derivative of sinc(x) = sin(x)/x; the
# inflexion point of maximum slope of a square pulse's spectral envelope.
W_SINC = 2.081575977818101


def sinc(x):
    """sin(x)/x with the removable singularity filled in: sinc(0) = 1."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def wrap_phase(x):
    """Wrap an angle (or array of angles) to the interval (-pi, pi]."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    y = np.where(y <= -np.pi, y + TWO_PI, y)
    return y if y.ndim else float(y)


def unitarity_defect(u):
    """Max-norm deviation of U^dag U from the identity, over any batch."""
    u = np.asarray(u)
    prod = np.swapaxes(u.conj(), -1, -2) @ u
    prod = prod - np.eye(2)
    return float(np.max(np.abs(prod))) if prod.size else 0.0


# --------------------------------------------------------------------------
# Parameter records
# --------------------------------------------------------------------------

MODES = ("conditional", "unconditional")


@dataclass(frozen=True)
class SequenceParams:
    """One DDRF sequence: N pi-pulses, half inter-pulse delay tau, bare Rabi
    frequency omega, RF frequency omega_rf, per-pulse phase increment
    delta_phi, and the gate mode the phase rule targets."""

    n_pulses: int
    tau: float
    omega: float
    omega_rf: float
    delta_phi: float
    mode: str = "conditional"
    dead_time: float = 0.0
    ac_stark_correction: bool = True

    def __post_init__(self):
        if self.n_pulses % 2 != 0 or self.n_pulses < 2:
            raise InvalidInputError("n_pulses must be even and >= 2")
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise InvalidInputError("tau must be > 0")
        if self.omega < 0:
            raise InvalidInputError("omega must be >= 0")
        if not (0 <= self.dead_time < self.tau):
            raise InvalidInputError("dead_time must lie in [0, tau)")
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {MODES}")

    @property
    def total_time(self) -> float:
        return 2 * self.n_pulses * self.tau


@dataclass(frozen=True)
class ConditionalGate:
    """Pair of nuclear-spin unitaries conditioned on the electron state.

    v0/v1 are complex arrays of shape (..., 2, 2); leading axes are batch
    dimensions from swept parameters.
    """

    v0: np.ndarray
    v1: np.ndarray

    def __post_init__(self):
        v0 = np.asarray(self.v0, dtype=complex)
        v1 = np.asarray(self.v1, dtype=complex)
        object.__setattr__(self, "v0", v0)
        object.__setattr__(self, "v1", v1)
        if v0.shape != v1.shape or v0.shape[-2:] != (2, 2):
            raise InvalidInputError("v0/v1 must share a (..., 2, 2) shape")
        defect = max(unitarity_defect(v0), unitarity_defect(v1))
        if defect > 1e-11:
            raise InvalidInputError(f"gate is not unitary (defect {defect:.3e})")


@dataclass(frozen=True)
class RotationDecomposition:
    """Axis-angle form of a conditional gate: v_i ~ exp(-i theta/2 n_i.sigma)
    up to a global phase, with a common angle theta for both branches."""

    theta: np.ndarray
    n0: np.ndarray
    n1: np.ndarray
    dot: np.ndarray
    axes_defined: np.ndarray


class PhaseIncrement(NamedTuple):
    delta_phi: float
    ac_stark_applied: bool
    warning: str | None


# --------------------------------------------------------------------------
# Propagators
# --------------------------------------------------------------------------

def segment_propagator(delta, omega, phi, duration):
    """Closed-form propagator exp(-i*duration*(delta I_z + omega(cos phi I_x + sin phi I_y))).

    Equals cos(d*W/2) I - i sin(d*W/2) (n.sigma) with W = sqrt(delta^2+omega^2)
    and n = (omega cos phi, omega sin phi, delta)/W; exactly unitary, identity
    when both delta and omega vanish.  Broadcasts over all arguments.
    """
    delta, omega, phi, duration = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (delta, omega, phi, duration))
    )
    if np.any(duration < 0):
        raise InvalidInputError("duration must be >= 0")
    omega_rot = np.hypot(delta, omega)
    half = 0.5 * duration * omega_rot
    cos_half = np.cos(half)
    # sin(half)/omega_rot, finite at omega_rot = 0
    s_fac = 0.5 * duration * sinc(half)
    vx = omega * np.cos(phi) * s_fac
    vy = omega * np.sin(phi) * s_fac
    vz = delta * s_fac

    u = np.empty(delta.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = cos_half - 1j * vz
    u[..., 0, 1] = -1j * vx - vy
    u[..., 1, 0] = -1j * vx + vy
    u[..., 1, 1] = cos_half + 1j * vz
    return u


def rz(angle):
    """Nuclear-frame z rotation exp(-i angle sigma_z / 2); broadcasts."""
    angle = np.asarray(angle, dtype=float)
    u = np.zeros(angle.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = np.exp(-0.5j * angle)
    u[..., 1, 1] = np.exp(+0.5j * angle)
    return u


def _drive_segment(delta, length, omega, dead_time):
    """One RF segment; drive is switched off for dead_time, split evenly
    around the segment (precession continues while the drive is off)."""
    if dead_time == 0.0:
        return segment_propagator(delta, omega, 0.0, length)
    off = segment_propagator(delta, 0.0, 0.0, 0.5 * dead_time)
    mid = segment_propagator(delta, omega, 0.0, length - dead_time)
    return off @ mid @ off


def conditional_block(delta0, delta1, delta_phi, tau, omega, dead_time=0.0):
    """Raw N=2 unit-cell pair (v0, v1) as stacked arrays.

    v0 = T0 Rz T1^2 Rz T0, v1 with the roles swapped; the matrices are the
    literal segment products (phases retained; the unit cell's overall -1
    from the two electron pi-pulses is a global phase of the two-qubit cell
    and is not folded into the nuclear branches).  Broadcasts over delta0,
    delta1 and delta_phi.

    The nuclear x axis is oriented so that, on resonance, the |0> branch
    rotates by +2*effective_rabi*tau per cell about +x (the phase origin of
    the first pulse is a free convention); this amounts to a drive phase of
    pi in the segment propagators.
    """
    omega = -np.asarray(omega, dtype=float)  # drive along -x; see docstring
    a0 = _drive_segment(delta0, tau, omega, dead_time)
    a1 = _drive_segment(delta1, tau, omega, dead_time)
    b0 = _drive_segment(delta0, 2.0 * tau, omega, 2.0 * dead_time)
    b1 = _drive_segment(delta1, 2.0 * tau, omega, 2.0 * dead_time)
    phase = rz(delta_phi)
    v0 = a0 @ phase @ b1 @ phase @ a0
    v1 = a1 @ phase @ b0 @ phase @ a1
    return v0, v1


def block_unitary(seq: SequenceParams, delta0, delta1) -> ConditionalGate:
    """N=2 unit-cell gate for the given sequence parameters."""
    v0, v1 = conditional_block(
        delta0, delta1, seq.delta_phi, seq.tau, seq.omega, seq.dead_time
    )
    return ConditionalGate(v0, v1)


def sequence_unitary(seq: SequenceParams, delta0, delta1) -> ConditionalGate:
    """Full-sequence gate: the unit cell raised to the power N/2."""
    v0, v1 = conditional_block(
        delta0, delta1, seq.delta_phi, seq.tau, seq.omega, seq.dead_time
    )
    k = seq.n_pulses // 2
    return ConditionalGate(
        np.linalg.matrix_power(v0, k), np.linalg.matrix_power(v1, k)
    )


# --------------------------------------------------------------------------
# Axis-angle decomposition
# --------------------------------------------------------------------------

def _su2_params(u):
    """(a, v) with e^{-i phase} U = a I - i v.sigma; a real scalar, v real 3-vector."""
    u = np.asarray(u, dtype=complex)
    det = u[..., 0, 0] * u[..., 1, 1] - u[..., 0, 1] * u[..., 1, 0]
    u = u * np.exp(-0.5j * np.angle(det))[..., None, None]
    a = 0.5 * np.real(u[..., 0, 0] + u[..., 1, 1])
    v = np.stack(
        [
            -0.5 * np.imag(u[..., 0, 1] + u[..., 1, 0]),
            0.5 * np.real(u[..., 1, 0] - u[..., 0, 1]),
            -0.5 * np.imag(u[..., 0, 0] - u[..., 1, 1]),
        ],
        axis=-1,
    )
    return a, v


def reconstruct_rotation(theta, axis):
    """exp(-i theta/2 axis.sigma) for a unit axis; broadcasts."""
    theta = np.asarray(theta, dtype=float)
    axis = np.asarray(axis, dtype=float)
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    u = np.empty(np.broadcast_shapes(theta.shape, axis.shape[:-1]) + (2, 2), complex)
    vx, vy, vz = (s * axis[..., k] for k in range(3))
    u[..., 0, 0] = c - 1j * vz
    u[..., 0, 1] = -1j * vx - vy
    u[..., 1, 0] = -1j * vx + vy
    u[..., 1, 1] = c + 1j * vz
    return u


_AXIS_TOL = 1e-7      # components below this do not determine the sign convention
_THETA_TOL = 1e-9     # below this the rotation axis is reported undefined
_THETA_MATCH_TOL = 1e-9


def decompose_rotation(gate: ConditionalGate) -> RotationDecomposition:
    """Common rotation angle and the two rotation axes of a conditional gate.

    The global phase of each branch is ignored.  theta lies in [0, 2pi); the
    sign of n0 is fixed by requiring its first significant component to be
    positive, and n1 is chosen so that exp(-i theta/2 n1.sigma) reproduces v1
    up to a global phase.  For theta below 1e-9 the axes are undefined (NaN)
    and dot = 1 by convention.
    """
    a0, vec0 = _su2_params(gate.v0)
    a1, vec1 = _su2_params(gate.v1)
    r0 = np.linalg.norm(vec0, axis=-1)
    r1 = np.linalg.norm(vec1, axis=-1)
    theta0_raw = 2.0 * np.arctan2(r0, a0)
    theta1_raw = 2.0 * np.arctan2(r1, a1)
    defined0 = r0 > 0.5 * _THETA_TOL
    defined1 = r1 > 0.5 * _THETA_TOL

    with np.errstate(invalid="ignore", divide="ignore"):
        n0 = np.where(defined0[..., None], vec0 / r0[..., None], np.nan)
        n1 = np.where(defined1[..., None], vec1 / r1[..., None], np.nan)

    # sign convention on n0: first component larger than the tolerance is positive
    significant = np.abs(np.nan_to_num(n0)) > _AXIS_TOL
    first = np.argmax(significant, axis=-1)
    lead = np.take_along_axis(np.nan_to_num(n0), first[..., None], axis=-1)[..., 0]
    flip0 = defined0 & (lead < 0)
    n0 = np.where(flip0[..., None], -n0, n0)
    theta0 = np.where(flip0, TWO_PI - theta0_raw, theta0_raw)
    theta0 = np.where(defined0, theta0, 0.0)

    # n1: pick the axis-angle representative whose angle matches theta0
    alt = np.abs((TWO_PI - theta1_raw) - theta0) < np.abs(theta1_raw - theta0)
    use_alt = defined1 & alt
    n1 = np.where(use_alt[..., None], -n1, n1)
    theta1 = np.where(use_alt, TWO_PI - theta1_raw, theta1_raw)
    theta1 = np.where(defined1, theta1, 0.0)

    mismatch = np.abs(theta1 - theta0)
    if np.any(defined0 != defined1) or np.any(mismatch > _THETA_MATCH_TOL):
        raise InvalidInputError(
            f"branch rotation angles differ (max {float(np.max(mismatch)):.3e} rad); "
            "not a common-angle conditional gate"
        )

    both = defined0 & defined1
    dot = np.where(both, np.einsum("...k,...k->...k", n0, n1).sum(-1), 1.0)
    dot = np.clip(np.nan_to_num(dot, nan=1.0), -1.0, 1.0)
    theta = np.mod(theta0, TWO_PI)
    return RotationDecomposition(
        theta=theta, n0=n0, n1=n1, dot=dot, axes_defined=both
    )


# --------------------------------------------------------------------------
# Phase rule, effective Rabi frequency, responses
# --------------------------------------------------------------------------

def resonant_phase_increment(
    delta0, delta1, tau, mode="conditional", omega=0.0, ac_stark=True
) -> PhaseIncrement:
    """Per-pulse phase increment tracking a spin's frequency-phase resonance.

    Conditional gates add pi per pulse (inverting the drive with the electron
    flips) plus, when enabled, the AC-Stark correction -omega^2*tau/delta0 of
    the undriven transition.  Unconditional gates drop both terms.  Result is
    wrapped to (-pi, pi].
    """
    if mode not in MODES:
        raise InvalidInputError(f"mode must be one of {MODES}")
    base = -(np.asarray(delta0, dtype=float) + np.asarray(delta1, dtype=float)) * tau
    if mode == "unconditional":
        return PhaseIncrement(wrap_phase(base), False, None)

    applied = False
    warning = None
    shift = 0.0
    if ac_stark and omega > 0:
        if np.any(np.asarray(delta0) == 0):
            warning = "AC-Stark correction skipped: delta0 = 0"
        else:
            shift = -(omega**2) * tau / np.asarray(delta0, dtype=float)
            applied = True
    return PhaseIncrement(wrap_phase(base + np.pi + shift), applied, warning)


def effective_rabi(omega, delta0, delta1, tau, mode="conditional"):
    """Signed effective Rabi frequency of the sequence (rad/s).

    Conditional: omega*(sinc(delta1 tau) - sinc(delta0 tau)); unconditional
    drives add instead of cancel, giving the sum of the sinc factors.
    """
    if mode not in MODES:
        raise InvalidInputError(f"mode must be one of {MODES}")
    if not np.all(np.asarray(tau) > 0):
        raise InvalidInputError("tau must be > 0")
    s1 = sinc(np.asarray(delta1, dtype=float) * tau)
    s0 = sinc(np.asarray(delta0, dtype=float) * tau)
    return omega * (s1 - s0) if mode == "conditional" else omega * (s1 + s0)


def electron_response(dot, total_angle):
    """Probability of recovering the electron superposition after the gate.

    total_angle is the accumulated rotation N*theta/2 (theta per unit cell).
    P0 = (<sigma_x> + 1)/2 with <sigma_x> = 1 - (1 - n0.n1) sin^2(N theta/2);
    for anti-parallel axes this is the analytic 1/2 + cos(2 Omega_eff N tau)/2.
    """
    dot = np.clip(np.asarray(dot, dtype=float), -1.0, 1.0)
    sx = 1.0 - (1.0 - dot) * np.sin(np.asarray(total_angle, dtype=float)) ** 2
    p0 = 0.5 * (sx + 1.0)
    return np.clip(p0, 0.0, 1.0)


def local_window_response(omega, delta1, n_pulses, tau):
    """Electron response when only one nuclear transition is driven.

    Valid under |delta0|*tau >> 1 with the phase increment -delta0*tau + pi;
    a Lorentzian in delta1/omega times a sinusoid in the driven-axis angle.
    """
    omega = np.asarray(omega, dtype=float)
    delta1 = np.asarray(delta1, dtype=float)
    w2 = omega**2 + delta1**2
    with np.errstate(invalid="ignore", divide="ignore"):
        lorentz = np.where(w2 > 0, 2.0 * omega**2 / np.where(w2 > 0, w2, 1.0), 0.0)
    sx = 0.5 * (1.0 - lorentz * np.sin(0.5 * n_pulses * tau * np.sqrt(w2)) ** 2)
    return np.clip(sx + 0.5, 0.0, 1.0)


# --------------------------------------------------------------------------
# Gate fidelity against the ideal +-pi/2 conditional rotation
# --------------------------------------------------------------------------

IDEAL_HALF_ANGLE = 0.25 * np.pi  # rotation angle pi/2 about the decomposed axes


def _axis_fidelity(n0, n1):
    """Two-qubit average gate fidelity of the angle-corrected gate.

    Building U' = |0><0| exp(-i pi/4 n0.sigma) + |1><1| exp(-i pi/4 n1.sigma)
    and comparing with the ideal conditional x rotation reduces to a function
    of the axis x components: F = ((2 + n0x - n1x)^2 + 4)/20.
    """
    tr = 2.0 + n0[..., 0] - n1[..., 0]
    return (tr**2 + 4.0) / 20.0


def ideal_conditional_gate() -> np.ndarray:
    """CR_x(+-pi/2): x rotations of opposite sign for the two electron states."""
    u = np.zeros((4, 4), dtype=complex)
    u[:2, :2] = reconstruct_rotation(0.5 * np.pi, [1.0, 0.0, 0.0])
    u[2:, 2:] = reconstruct_rotation(-0.5 * np.pi, [1.0, 0.0, 0.0])
    return u


def conditional_gate_fidelity(gate: ConditionalGate):
    """Average gate fidelity after forcing the rotation angle to pi/2.

    Decomposes the gate, rebuilds it with rotation angle pi/2 about the
    extracted axes and evaluates the two-qubit average gate fidelity against
    the ideal conditional x rotation (angle tuning is a calibration freedom).
    """
    dec = decompose_rotation(gate)
    if not np.all(dec.axes_defined):
        raise UndefinedAxesError(
            "rotation angle too small to define axes; gate fidelity undefined"
        )
    f = _axis_fidelity(dec.n0, dec.n1)
    return float(f) if np.ndim(f) == 0 else f


def optimize_phase_increment(
    delta0, delta1, tau, omega, dead_time=0.0, *, coarse=720, zooms=2, fine=81
):
    """Numerically pick the phase increment maximizing conditional gate fidelity.

    Deterministic coarse scan over (-pi, pi] followed by window zooms; used
    when the RF frequency sits between both transitions and the closed-form
    AC-Stark correction does not apply.
    """
    lo, hi = -np.pi, np.pi
    best = None
    for stage in range(zooms + 1):
        n = coarse if stage == 0 else fine
        grid = np.linspace(lo, hi, n, endpoint=stage > 0)
        if stage == 0:
            grid = grid + 0.5 * (hi - lo) / n  # avoid double-counting the wrap point
        v0, v1 = conditional_block(delta0, delta1, grid, tau, omega, dead_time)
        dec = decompose_rotation(ConditionalGate(v0, v1))
        f = np.where(dec.axes_defined, _axis_fidelity(dec.n0, dec.n1), -1.0)
        k = int(np.argmax(f))
        best = float(grid[k])
        step = grid[1] - grid[0]
        lo, hi = best - step, best + step
    return wrap_phase(best)
