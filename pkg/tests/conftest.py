import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ghzprob.hv_models import build_singular_contextual_model, ghz_constraints  # noqa: E402


@pytest.fixture
def ghz():
    return ghz_constraints()


@pytest.fixture
def singular_model(ghz):
    return build_singular_contextual_model(ghz)
