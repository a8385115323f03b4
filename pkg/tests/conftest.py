import sys
from pathlib import Path

import pytest
from hypothesis import settings

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

settings.register_profile("qstirling", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("qstirling")


@pytest.fixture
def data_dir(tmp_path, monkeypatch):
    """Point the table cache at a throwaway directory."""
    monkeypatch.setenv("QSTIRLING_DATA_DIR", str(tmp_path))
    return tmp_path
