"""Sensitivity figures of merit for detecting a single weakly coupled spin.

The detectable-spin number in one second of integration is
v_min = 2 pi e^chi / (omega_eff sqrt(t)); minimizing it trades electron
coherence (favoring many pulses, short tau) against the effective Rabi
frequency (suppressed at short tau when both nuclear transitions fall inside
the pulse bandwidth).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import TWO_PI, W_SINC, effective_rabi, sinc
from .errors import InvalidInputError
from .sweeps import SweepResult


@dataclass(frozen=True)
class CoherenceModel:
    """Stretched-exponential electron coherence under decoupling:
    chi(N, t) = (t / T(N))^n_exp with T(N) = t_ref (N/4)^eta."""

    t_ref: float = 2.99e-3
    eta: float = 0.799
    n_exp: float = 2.0

    def __post_init__(self):
        for name in ("t_ref", "eta", "n_exp"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"CoherenceModel.{name} must be > 0")

    def coherence_time(self, n_pulses):
        return self.t_ref * (np.asarray(n_pulses, dtype=float) / 4.0) ** self.eta


@dataclass(frozen=True)
class AmplitudePolicy:
    """RF amplitude caps: dimensionless omega*tau cap (model validity) and an
    absolute cap (rad/s, hardware)."""

    omega_tau_cap: float = 0.5
    omega_abs_cap: float = TWO_PI * 10e3

    def __post_init__(self):
        if not (self.omega_tau_cap > 0 and self.omega_abs_cap > 0):
            raise InvalidInputError("amplitude caps must be > 0")


def decoherence_exponent(n_pulses, t, model: CoherenceModel):
    """chi(N, t) >= 0; e^-chi is the remaining electron coherence."""
    n_arr = np.asarray(n_pulses, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    if np.any(n_arr < 1):
        raise InvalidInputError("n_pulses must be >= 1")
    if np.any(t_arr < 0):
        raise InvalidInputError("t must be >= 0")
    out = (t_arr / model.coherence_time(n_arr)) ** model.n_exp
    return float(out) if out.ndim == 0 else out


def optimal_detuning(delta, tau):
    """RF detuning from the driven transition maximizing the effective Rabi
    frequency: -w_s/tau + delta/2 while the pulse bandwidth covers both
    transitions (tau <= 2 pi/|delta|), resonant driving otherwise."""
    delta = np.asarray(delta, dtype=float)
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr <= 0):
        raise InvalidInputError("tau must be > 0")
    detuned = np.abs(delta) * tau_arr <= TWO_PI
    out = np.where(detuned, -W_SINC / tau_arr + 0.5 * delta, 0.0)
    return float(out) if out.ndim == 0 else out


def max_effective_rabi(delta, tau, omega):
    """Maximum attainable |effective Rabi| at the optimal detuning (rad/s).

    Closed form: omega * [sinc(w_s - |delta| tau/2) - sinc(w_s + |delta| tau/2)]
    in the broadband regime, omega * [1 - sinc(delta tau)] when the
    transitions resolve; the branches join at tau = 2 pi/|delta|.
    """
    delta = np.asarray(delta, dtype=float)
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr <= 0):
        raise InvalidInputError("tau must be > 0")
    x = np.abs(delta) * tau_arr
    broad = sinc(W_SINC - 0.5 * x) - sinc(W_SINC + 0.5 * x)
    narrow = 1.0 - sinc(x)
    out = omega * np.where(x <= TWO_PI, broad, narrow)
    return float(out) if out.ndim == 0 else out


def apply_amplitude_policy(omega_desired, tau, policy: AmplitudePolicy):
    """Cap a requested RF amplitude: min(desired, cap/tau, absolute cap)."""
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr <= 0) or np.any(np.asarray(omega_desired) < 0):
        raise InvalidInputError("tau must be > 0 and omega_desired >= 0")
    out = np.minimum(
        np.asarray(omega_desired, dtype=float),
        np.minimum(policy.omega_tau_cap / tau_arr, policy.omega_abs_cap),
    )
    return float(out) if out.ndim == 0 else out


def sensitivity(omega_eff, chi, t):
    """Minimum detectable spin number in 1 s: 2 pi e^chi/(omega_eff sqrt(t)).

    omega_eff = 0 maps to the infinite-sensitivity sentinel (inf).
    """
    omega_arr = np.asarray(omega_eff, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    if np.any(omega_arr < 0):
        raise InvalidInputError("omega_eff must be >= 0")
    if np.any(t_arr <= 0):
        raise InvalidInputError("t must be > 0")
    with np.errstate(divide="ignore", over="ignore"):
        out = np.where(
            omega_arr > 0,
            TWO_PI * np.exp(np.asarray(chi, dtype=float))
            / (np.where(omega_arr > 0, omega_arr, 1.0) * np.sqrt(t_arr)),
            np.inf,
        )
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SensingOptimum:
    n_pulses: int
    t: float
    tau: float
    delta1: float
    omega_set: float
    omega_eff: float
    chi: float
    v_min: float


@dataclass(frozen=True)
class SensingResult:
    sweep: SweepResult            # v_min map
    maps: dict                    # omega_eff / omega_set / coherence maps
    best: SensingOptimum


def default_n_grid(n_max=4096):
    """Pulse numbers 4, 8, 16, ... up to n_max (powers of two times four)."""
    out = []
    n = 4
    while n <= n_max:
        out.append(n)
        n *= 2
    return out


def default_t_grid(t_min=0.1e-3, t_max=100e-3, count=100):
    return np.geomspace(t_min, t_max, count)


def optimize_sensitivity(
    delta,
    n_list=None,
    t_list=None,
    policy: AmplitudePolicy | None = None,
    coherence: CoherenceModel | None = None,
    protocol: str = "detuned",
) -> SensingResult:
    """Sensitivity map over (number of pulses, total sequence time).

    Per cell tau = t/(2N); the detuned protocol picks the RF detuning
    maximizing the effective Rabi frequency (the closed-form optimum or
    resonant driving, whichever is larger), the resonant protocol always
    drives on resonance; the RF amplitude is raised to the policy caps.
    """
    if protocol not in ("resonant", "detuned"):
        raise InvalidInputError("protocol must be 'resonant' or 'detuned'")
    policy = policy or AmplitudePolicy()
    coherence = coherence or CoherenceModel()
    n_arr = np.asarray(n_list if n_list is not None else default_n_grid(), dtype=int)
    t_arr = np.asarray(t_list if t_list is not None else default_t_grid(), dtype=float)
    if np.any(n_arr < 2) or np.any(n_arr % 2):
        raise InvalidInputError("n grid must contain even pulse numbers >= 2")
    if np.any(t_arr <= 0):
        raise InvalidInputError("t grid must be positive")

    n_col = n_arr[:, None].astype(float)
    t_row = t_arr[None, :]
    tau = t_row / (2.0 * n_col)

    if protocol == "detuned":
        d1 = optimal_detuning(delta, tau)
        rel = np.abs(effective_rabi(1.0, d1 - delta, d1, tau))
        rel_res = np.abs(effective_rabi(1.0, -delta, 0.0, tau))
        use_res = rel_res > rel
        d1 = np.where(use_res, 0.0, d1)
        rel = np.maximum(rel, rel_res)
    else:
        d1 = np.zeros_like(tau)
        rel = np.abs(effective_rabi(1.0, -delta, 0.0, tau))

    omega_set = apply_amplitude_policy(np.inf, tau, policy)
    omega_eff = omega_set * rel
    chi = decoherence_exponent(n_col, t_row, coherence)
    v = sensitivity(omega_eff, chi, t_row * np.ones_like(omega_eff))

    metadata = {
        "kind": "sensing",
        "protocol": protocol,
        "delta_hz": f"{delta / TWO_PI:.9g}",
        "omega_tau_cap": f"{policy.omega_tau_cap:.9g}",
        "omega_abs_cap_hz": f"{policy.omega_abs_cap / TWO_PI:.9g}",
        "coherence_t_ref_s": f"{coherence.t_ref:.9g}",
        "coherence_eta": f"{coherence.eta:.9g}",
        "coherence_n_exp": f"{coherence.n_exp:.9g}",
    }

    def _sweep(vals, name):
        md = dict(metadata)
        md["quantity"] = name
        return SweepResult(
            x_name="n_pulses", x_unit="1", x_values=n_arr.astype(float),
            y_name="sequence_time", y_unit="s", y_values=t_arr,
            values=vals, metadata=md,
        )

    sweep = _sweep(v, "v_min")
    maps = {
        "omega_eff": _sweep(omega_eff / TWO_PI, "omega_eff_hz"),
        "omega_set": _sweep(omega_set / TWO_PI, "omega_set_hz"),
        "coherence": _sweep(np.exp(-chi), "coherence"),
    }
    i, j = sweep.argbest("min")
    best = SensingOptimum(
        n_pulses=int(n_arr[i]),
        t=float(t_arr[j]),
        tau=float(tau[i, j]),
        delta1=float(d1[i, j]),
        omega_set=float(omega_set[i, j]),
        omega_eff=float(omega_eff[i, j]),
        chi=float(chi[i, j]),
        v_min=float(v[i, j]),
    )
    return SensingResult(sweep=sweep, maps=maps, best=best)
