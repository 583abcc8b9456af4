"""
PyTest configuration: curve fixtures loaded from the bundled profiles.
"""
import pytest

from config.settings import CURVE_DIR
from curve_arith.profiles import load_profile

FIXTURE_NAMES = ("p1_f2", "p1_f3", "ell_f2", "ell_f3", "g2_f2")


def _curve(name: str):
    return load_profile(CURVE_DIR / f"{name}.json")


@pytest.fixture(scope="session")
def p1_f2():
    """P^1 over F_2"""
    return _curve("p1_f2")


@pytest.fixture(scope="session")
def p1_f3():
    return _curve("p1_f3")


@pytest.fixture(scope="session")
def ell_f2():
    """Elliptic curve over F_2 with a_1 = 0 (3 points)"""
    return _curve("ell_f2")


@pytest.fixture(scope="session")
def ell_f3():
    return _curve("ell_f3")


@pytest.fixture(scope="session")
def g2_f2():
    """Genus-2 curve over F_2 with P(t) = 1 + 4t^4"""
    return _curve("g2_f2")


@pytest.fixture(scope="session")
def all_curves():
    return [_curve(name) for name in FIXTURE_NAMES]


# Pytest configuration
def pytest_configure(config):
    config.addinivalue_line("markers", "integration: mark test as integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "unit: mark test as unit test")
