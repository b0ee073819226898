import pytest

from mfun import build_coefficients, bundled_zeros_path, load_zeros


@pytest.fixture(scope="session")
def zero_table():
    return load_zeros(bundled_zeros_path())


@pytest.fixture(scope="session")
def coeffs(zero_table):
    return build_coefficients(zero_table)
