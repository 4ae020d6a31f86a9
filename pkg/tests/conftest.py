import numpy as np
import pytest

import ddrfsim as dd


@pytest.fixture(scope="session")
def table():
    return dd.load_spin_table(dd.default_spin_table_path())


@pytest.fixture(scope="session")
def constants():
    return dd.PhysicalConstants()


@pytest.fixture(scope="session")
def field(table):
    return table.field


@pytest.fixture(scope="session")
def register_config(table):
    return dd.RegisterConfig.from_table(table)


@pytest.fixture(scope="session")
def larmor(field, constants):
    return constants.gamma_c * field.b_z


def random_unitary(dim, rng):
    """Haar-ish unitary from the QR decomposition of a complex Gaussian."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
