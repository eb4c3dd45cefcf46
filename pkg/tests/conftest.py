from pathlib import Path

import pytest

from zeiger.grid import parse_filling, parse_grid
from zeiger.nae import parse_nae

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fig1_grid():
    return parse_grid((FIXTURES / "fig1.puzzle").read_text())


@pytest.fixture(scope="session")
def fig1_solution():
    return parse_filling((FIXTURES / "fig1.solution").read_text())


@pytest.fixture(scope="session")
def fig2_instance():
    inst, _ = parse_nae((FIXTURES / "fig2.nae").read_text())
    return inst
