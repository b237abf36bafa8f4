import pytest

from normal_cover import harness
from normal_cover.primitive_data import bundled_data_dir


@pytest.fixture
def quiet_config():
    return harness.prepare_configuration({"show_progress": False})


@pytest.fixture
def m12_config():
    return harness.prepare_configuration({"show_progress": False, "primitive_data": [bundled_data_dir()]})


@pytest.fixture
def solve():
    """ (n, group, **config) -> (matrix, result) without progress bars. """

    def _solve(n, group, **config):
        config.setdefault("show_progress", False)
        return harness.solve(n, group, config)

    return _solve
