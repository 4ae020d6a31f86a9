"""Average gate fidelity of unitary channels."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import InvalidInputError

_PAULI_1Q = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _check_unitary(u, d, name):
    u = np.asarray(u, dtype=complex)
    if u.shape != (d, d):
        raise InvalidInputError(f"{name} must be {d}x{d}, got {u.shape}")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(d)))
    if defect > 1e-8:
        raise InvalidInputError(f"{name} is not unitary (defect {defect:.3e})")
    return u


def average_gate_fidelity(u_target, u_actual, d=None):
    """State-averaged fidelity between two unitaries on a d-dim space.

    Uses the closed form (|Tr(U_t^dag U_a)|^2 + d) / (d(d+1)), which equals
    the Pauli-sum definition (see average_gate_fidelity_pauli_sum); invariant
    under global phases of either argument.
    """
    u_target = np.asarray(u_target, dtype=complex)
    if d is None:
        d = u_target.shape[-1]
    u_target = _check_unitary(u_target, d, "u_target")
    u_actual = _check_unitary(u_actual, d, "u_actual")
    tr = np.trace(u_target.conj().T @ u_actual)
    return float((abs(tr) ** 2 + d) / (d * (d + 1)))


def pauli_basis(n_qubits):
    """All 4^n Pauli strings as (4^n, 2^n, 2^n)."""
    mats = []
    for combo in itertools.product(_PAULI_1Q, repeat=n_qubits):
        m = combo[0]
        for p in combo[1:]:
            m = np.kron(m, p)
        mats.append(m)
    return np.array(mats)


def average_gate_fidelity_pauli_sum(u_target, u_actual):
    """Average gate fidelity from the explicit Pauli twirl sum.

    F = (sum_j Tr(U_t U_j^dag U_t^dag U_a U_j U_a^dag) + d^2) / (d^2 (d+1));
    exponentially slower than the closed form, kept as an independent check.
    """
    u_t = np.asarray(u_target, dtype=complex)
    d = u_t.shape[-1]
    n_qubits = int(round(np.log2(d)))
    if 2**n_qubits != d:
        raise InvalidInputError("Pauli-sum fidelity needs a 2^n dimensional space")
    u_t = _check_unitary(u_t, d, "u_target")
    u_a = _check_unitary(u_actual, d, "u_actual")
    total = 0.0
    for pj in pauli_basis(n_qubits):
        total += np.real(
            np.trace(u_t @ pj.conj().T @ u_t.conj().T @ u_a @ pj @ u_a.conj().T)
        )
    return float((total + d**2) / (d**2 * (d + 1)))
