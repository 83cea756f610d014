import numpy as np
import pytest

from fibsteg.datasets import standard_covers, write_covers


@pytest.fixture(scope="session")
def covers():
    return standard_covers()


@pytest.fixture(scope="session")
def camera(covers):
    return covers["camera"]


@pytest.fixture(scope="session")
def cover_dir(tmp_path_factory, covers):
    d = tmp_path_factory.mktemp("covers")
    write_covers(d, covers)
    return d


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
