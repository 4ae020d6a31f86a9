"""Simulation and optimization toolkit for dynamically-decoupled RF
electron-nuclear spin gates: gate unitaries, spectroscopy signals, sensing
sensitivities and multi-qubit register fidelities."""

from .engine import (
    ConditionalGate,
    PhaseIncrement,
    RotationDecomposition,
    SequenceParams,
    W_SINC,
    block_unitary,
    conditional_gate_fidelity,
    decompose_rotation,
    effective_rabi,
    electron_response,
    local_window_response,
    optimize_phase_increment,
    resonant_phase_increment,
    segment_propagator,
    sequence_unitary,
    sinc,
    wrap_phase,
)
from .errors import ConfigError, DDRFError, InvalidInputError, UndefinedAxesError
from .fidelity import average_gate_fidelity, average_gate_fidelity_pauli_sum
from .register import (
    FidelityMapResult,
    GateOutcome,
    RegisterConfig,
    SelectivityReport,
    apply_dephasing,
    dephasing_lambdas,
    fidelity_map,
    ideal_register_unitary,
    register_gate_unitary,
    selectivity_bounds,
    t2star_average,
)
from .sensing import (
    AmplitudePolicy,
    CoherenceModel,
    SensingOptimum,
    SensingResult,
    apply_amplitude_policy,
    decoherence_exponent,
    default_n_grid,
    default_t_grid,
    max_effective_rabi,
    optimal_detuning,
    optimize_sensitivity,
    sensitivity,
)
from .spectroscopy import (
    BathModel,
    bath_density,
    bath_signal,
    composite_signal,
    phase_frequency_transform,
    single_spin_signal,
    spectroscopy_sweep,
)
from .spin_model import (
    FieldConfig,
    NuclearSpinSpec,
    PhysicalConstants,
    SpinTable,
    TransitionFrequencies,
    a_parallel_from_delta,
    delta_from_a_parallel,
    detunings,
    load_spin_table,
    transition_frequencies,
)
from .sweeps import SweepResult, read_sweep_csv, write_sweep_csv

__version__ = "0.1.0"


def default_spin_table_path() -> str:
    """Filesystem path of the packaged NV spin table."""
    from importlib.resources import files

    return str(files(__name__) / "data" / "spins_nv_table1")
