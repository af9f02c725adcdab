import copy
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from engines.numeric_defaults import NUMERIC_DEFAULTS


@pytest.fixture(autouse=True)
def restore_numeric_defaults():
    """The CLI backend writes config overrides into NUMERIC_DEFAULTS"""
    saved = copy.deepcopy(NUMERIC_DEFAULTS)
    yield
    for name, values in saved.items():
        NUMERIC_DEFAULTS[name].clear()
        NUMERIC_DEFAULTS[name].update(values)
