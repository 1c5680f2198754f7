import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture
def scenarios():
    return ROOT / "scenarios"


@pytest.fixture
def cli():
    path = os.environ.get("CHAINLAB_CLI")
    if not path:
        pytest.skip("CHAINLAB_CLI not set")
    return path
