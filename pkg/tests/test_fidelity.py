import numpy as np
import pytest

import ddrfsim as dd
from ddrfsim.errors import InvalidInputError

from conftest import random_unitary

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_identity_fidelity():
    rng = np.random.default_rng(0)
    u = random_unitary(4, rng)
    assert dd.average_gate_fidelity(u, u) == pytest.approx(1.0, abs=1e-12)


def test_global_phase_invariance():
    rng = np.random.default_rng(1)
    u = random_unitary(8, rng)
    assert dd.average_gate_fidelity(u, np.exp(0.731j) * u) == pytest.approx(1.0, abs=1e-12)


def test_single_qubit_z_error():
    # oracle: explicit single-qubit Pauli sum over {I, X, Y, Z}
    total = 0.0
    for p in (I2, X, Y, Z):
        total += np.real(np.trace(I2 @ p.conj().T @ I2 @ Z @ p @ Z.conj().T))
    expected = (total + 4) / (4 * 3)
    assert expected == pytest.approx(1 / 3)
    assert dd.average_gate_fidelity(I2, Z) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_closed_form_equals_pauli_sum(dim):
    rng = np.random.default_rng(dim)
    for _ in range(8):
        u_t = random_unitary(dim, rng)
        u_a = random_unitary(dim, rng)
        closed = dd.average_gate_fidelity(u_t, u_a)
        twirl = dd.average_gate_fidelity_pauli_sum(u_t, u_a)
        assert abs(closed - twirl) <= 1e-10


def test_non_unitary_rejected():
    bad = np.eye(4, dtype=complex)
    bad[0, 0] = 1.5
    with pytest.raises(InvalidInputError):
        dd.average_gate_fidelity(np.eye(4), bad)
    with pytest.raises(InvalidInputError):
        dd.average_gate_fidelity(bad, np.eye(4))


def test_dimension_mismatch_rejected():
    with pytest.raises(InvalidInputError):
        dd.average_gate_fidelity(np.eye(4), np.eye(2))
