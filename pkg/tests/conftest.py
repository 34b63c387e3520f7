import logging

import pytest

from tests.helpers import SPECS


@pytest.fixture(autouse=True)
def _restore_root_logger():
    # the CLI installs its own root handler on a captured stream
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def specs_dir():
    return SPECS
