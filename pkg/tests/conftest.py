import pytest

from enerscale import datasets


@pytest.fixture(scope="session")
def snapshot():
    return datasets.load_snapshot()


@pytest.fixture(scope="session")
def recon():
    return datasets.baseline()
