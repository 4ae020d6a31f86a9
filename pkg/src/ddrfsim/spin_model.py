"""Physical constants, nuclear-spin parameterization and transition-frequency arithmetic.

All frequencies inside the package are angular (rad/s).  External files and
command-line flags use ordinary frequency in Hz; conversion happens at the
boundary (see :func:`load_spin_table` and the CLI).
"""

from __future__ import annotations

import configparser
import hashlib
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, InvalidInputError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants used by the models.

    gamma_e, gamma_c are angular gyromagnetic ratios (rad s^-1 T^-1);
    rho_13c is the number density of 13C in natural-abundance diamond (nm^-3).
    """

    gamma_e: float = TWO_PI * 28.0249514e9
    gamma_c: float = TWO_PI * 10.7084e6
    hbar: float = 1.054571817e-34
    mu0_over_4pi: float = 1e-7
    rho_13c: float = 1.950

    def __post_init__(self):
        for name in ("gamma_e", "gamma_c", "hbar", "mu0_over_4pi", "rho_13c"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"PhysicalConstants.{name} must be > 0")

    def dipolar_alpha(self) -> float:
        """Dipolar coupling prefactor hbar*mu0*gamma_e*gamma_c/4pi in rad/s nm^3."""
        alpha_si = self.hbar * self.mu0_over_4pi * self.gamma_e * self.gamma_c
        return alpha_si * 1e27  # m^3 -> nm^3


@dataclass(frozen=True)
class NuclearSpinSpec:
    """One nuclear spin: hyperfine shift delta = omega0 - omega1 (rad/s, signed)
    and perpendicular hyperfine component a_perp (rad/s, >= 0)."""

    label: str
    delta: float
    a_perp: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise InvalidInputError(f"spin {self.label!r}: delta must be finite")
        if not (math.isfinite(self.a_perp) and self.a_perp >= 0):
            raise InvalidInputError(f"spin {self.label!r}: a_perp must be >= 0")


@dataclass(frozen=True)
class FieldConfig:
    """Static magnetic field along the defect symmetry axis (T)."""

    b_z: float

    def __post_init__(self):
        if not (math.isfinite(self.b_z) and self.b_z > 0):
            raise InvalidInputError("FieldConfig.b_z must be > 0")


class TransitionFrequencies(NamedTuple):
    omega0: float
    omega1: float
    omega_bar: float
    delta_eff: float


def a_parallel_from_delta(delta, a_perp, omega0):
    """Parallel hyperfine component reproducing a measured shift delta.

    Inverts omega1 = sqrt(a_perp^2 + (omega0 - a_par)^2) under the constraint
    omega0 - omega1 = delta.  Reduces to a_par = delta when a_perp = 0.
    """
    omega1 = omega0 - delta
    radicand = omega1**2 - np.asarray(a_perp) ** 2
    if np.any(radicand < 0):
        raise InvalidInputError("a_perp exceeds omega0 - delta; no real a_parallel")
    return omega0 - np.sqrt(radicand)


def delta_from_a_parallel(a_par, a_perp, omega0):
    """Hyperfine shift omega0 - omega1 for given tensor components (all rad/s)."""
    omega1 = np.sqrt(np.asarray(a_perp) ** 2 + (omega0 - np.asarray(a_par)) ** 2)
    return omega0 - omega1


def transition_frequencies(
    spin: NuclearSpinSpec, field: FieldConfig, constants: PhysicalConstants
) -> TransitionFrequencies:
    """Nuclear precession frequencies for the two electron states (rad/s).

    omega0 is the bare Larmor frequency gamma_c*B_z; omega1 follows from the
    root formula omega1 = sqrt(a_perp^2 + (omega0 - a_par)^2), with a_par
    chosen so that omega0 - omega1 equals the configured shift.
    """
    omega0 = constants.gamma_c * field.b_z
    a_par = float(a_parallel_from_delta(spin.delta, spin.a_perp, omega0))
    omega1 = float(np.sqrt(spin.a_perp**2 + (omega0 - a_par) ** 2))
    if not all(map(math.isfinite, (omega0, omega1))):
        raise InvalidInputError(f"spin {spin.label!r}: non-finite transition frequency")
    return TransitionFrequencies(
        omega0=omega0,
        omega1=omega1,
        omega_bar=0.5 * (omega0 + omega1),
        delta_eff=omega0 - omega1,
    )


def detunings(omega0, omega1, omega_rf):
    """RF detunings (delta0, delta1) = (omega_rf - omega0, omega_rf - omega1)."""
    omega_rf = np.asarray(omega_rf, dtype=float)
    return omega_rf - omega0, omega_rf - omega1


# --------------------------------------------------------------------------
# Spin-table configuration files
# --------------------------------------------------------------------------

_SPIN_SECTION = "spin:"


@dataclass(frozen=True)
class SpinTable:
    """Parsed spin-table file: all spins plus the global model parameters.

    register/bath/coherence blocks are optional in the file; missing blocks
    fall back to the defaults used throughout the package.
    """

    spins: tuple[NuclearSpinSpec, ...]
    field: FieldConfig
    bath_delta_limit: float = TWO_PI * 6e3
    bath_n_bins: int = 300
    bath_clamp_floor: float = 1e-6
    coherence_t_ref: float = 2.99e-3
    coherence_eta: float = 0.799
    coherence_n_exp: float = 2.0
    register_labels: tuple[str, ...] = ()
    t2_star_nuclear: float = 10e-3
    n_field_samples: int = 10
    field_range_sigmas: float = 2.0
    source_sha256: str = ""
    source_path: str = ""

    def spin(self, label: str) -> NuclearSpinSpec:
        for s in self.spins:
            if s.label == label:
                return s
        raise ConfigError(f"unknown spin label {label!r}")


def _get_float(section, key, where, default=None):
    raw = section.get(key, None)
    if raw is None:
        if default is None:
            raise ConfigError(f"{where}: missing required field {key!r}")
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{where}: field {key!r} is not a number: {raw!r}") from exc


def _get_int(section, key, where, default):
    value = _get_float(section, key, where, float(default))
    if value != int(value):
        raise ConfigError(f"{where}: field {key!r} must be an integer")
    return int(value)


def load_spin_table(path) -> SpinTable:
    """Load a spin-table config file (INI format, frequencies in Hz).

    Per-spin sections are named ``[spin:<label>]`` with ``delta_hz`` and
    optional ``a_perp_hz``; global sections are ``[field]``, ``[bath]``,
    ``[coherence]`` and ``[register]``.
    """
    path = str(path)
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read spin table {path!r}: {exc}") from exc

    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(raw.decode("utf-8"), source=path)
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"{path}: duplicate section {exc.section!r}") from exc
    except (configparser.Error, UnicodeDecodeError) as exc:
        raise ConfigError(f"{path}: parse error: {exc}") from exc

    if not parser.has_section("field"):
        raise ConfigError(f"{path}: missing [field] section")
    b_z = _get_float(parser["field"], "b_z_tesla", f"{path} [field]")
    field_cfg = FieldConfig(b_z=b_z)

    spins = []
    seen = set()
    for name in parser.sections():
        if not name.startswith(_SPIN_SECTION):
            continue
        label = name[len(_SPIN_SECTION):].strip()
        if not label:
            raise ConfigError(f"{path}: empty spin label in section [{name}]")
        if label in seen:
            raise ConfigError(f"{path}: duplicate spin label {label!r}")
        seen.add(label)
        where = f"{path} [{name}]"
        delta_hz = _get_float(parser[name], "delta_hz", where)
        a_perp_hz = _get_float(parser[name], "a_perp_hz", where, default=0.0)
        spins.append(
            NuclearSpinSpec(label=label, delta=TWO_PI * delta_hz, a_perp=TWO_PI * a_perp_hz)
        )

    kwargs = {}
    if parser.has_section("bath"):
        sec, where = parser["bath"], f"{path} [bath]"
        kwargs["bath_delta_limit"] = TWO_PI * _get_float(sec, "delta_limit_hz", where, 6e3)
        kwargs["bath_n_bins"] = _get_int(sec, "n_bins", where, 300)
        kwargs["bath_clamp_floor"] = _get_float(sec, "clamp_floor", where, 1e-6)
    if parser.has_section("coherence"):
        sec, where = parser["coherence"], f"{path} [coherence]"
        kwargs["coherence_t_ref"] = _get_float(sec, "t_n4_s", where, 2.99e-3)
        kwargs["coherence_eta"] = _get_float(sec, "eta", where, 0.799)
        kwargs["coherence_n_exp"] = _get_float(sec, "n_exp", where, 2.0)
    if parser.has_section("register"):
        sec, where = parser["register"], f"{path} [register]"
        labels = tuple(
            tok.strip() for tok in sec.get("spins", "").replace(",", " ").split() if tok.strip()
        )
        for label in labels:
            if label not in seen:
                raise ConfigError(f"{where}: register spin {label!r} not defined")
        kwargs["register_labels"] = labels
        kwargs["t2_star_nuclear"] = _get_float(sec, "t2_star_s", where, 10e-3)
        kwargs["n_field_samples"] = _get_int(sec, "n_field_samples", where, 10)
        kwargs["field_range_sigmas"] = _get_float(sec, "field_range_sigmas", where, 2.0)

    return SpinTable(
        spins=tuple(spins),
        field=field_cfg,
        source_sha256=hashlib.sha256(raw).hexdigest(),
        source_path=path,
        **kwargs,
    )
