import pathlib

import pytest

from leavittpath import parse_graph
from leavittpath.fixtures import FIXTURE_TEXTS

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES_DIR = ROOT / "fixtures"


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES_DIR


def fixture_graph(name: str):
    return parse_graph(FIXTURE_TEXTS[name])


def fixture_path(name: str) -> str:
    return str(FIXTURES_DIR / f"{name}.lpa")
