import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def configs():
    return ROOT / "configs"


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("QEMTP_CLI")
    if not path:
        pytest.skip("QEMTP_CLI is not set")
    return path
