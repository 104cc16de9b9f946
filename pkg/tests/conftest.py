import json
from pathlib import Path

import pytest

from doubleforms.simplex_trace import SimplexForm
from doubleforms.fe_assembly import SimplicialComplex

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> dict:
    with open(FIXTURES / name, encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture
def regge_T1() -> SimplexForm:
    return SimplexForm.from_json(load_fixture("regge_T1.json"))


@pytest.fixture
def area_T2() -> SimplexForm:
    return SimplexForm.from_json(load_fixture("area_T2.json"))


@pytest.fixture
def nonvanishing_T2() -> SimplexForm:
    return SimplexForm.from_json(load_fixture("nonvanishing_T2.json"))


@pytest.fixture
def two_triangles() -> SimplicialComplex:
    return SimplicialComplex.from_json(load_fixture("two_triangles.json"))


@pytest.fixture
def two_tets() -> SimplicialComplex:
    return SimplicialComplex.from_json(load_fixture("two_tets.json"))


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
