import pytest

from randef.lotto import enumerate_all


@pytest.fixture(scope="session")
def enum_summary():
    """Exhaustive 6-of-45 enumeration, shared across tests (a few seconds)."""
    return enumerate_all()
