import sys
from pathlib import Path

import pytest

from rfaudit.search import SearchOptions

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def fast_opts():
    return SearchOptions(density=16, n_polish=4)
