import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from archvar.parser import load_paths  # noqa: E402
from mutants import CORPUS  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    model_set, diags = load_paths([CORPUS])
    assert diags == []
    return model_set
