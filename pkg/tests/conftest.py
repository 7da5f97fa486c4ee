import sys
from importlib.resources import files
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import make_topology  # noqa: E402

import vsdnplace  # noqa: E402
from vsdnplace import kernels  # noqa: E402

DATA = files("vsdnplace").joinpath("data")
ATT_GRAPHML = Path(str(DATA.joinpath("att_north_america.graphml")))
ATT_SCENARIO = Path(str(DATA.joinpath("att_scenario.cfg")))


@pytest.fixture
def line4():
    return make_topology(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])


@pytest.fixture
def cycle4():
    return make_topology(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])


@pytest.fixture
def line4_table(line4):
    return vsdnplace.all_pairs_shortest(line4)


@pytest.fixture(scope="session")
def att_topology():
    return vsdnplace.parse_graphml(ATT_GRAPHML.read_bytes())


@pytest.fixture(scope="session")
def att_config():
    return vsdnplace.load_scenario(ATT_SCENARIO.read_text())


@pytest.fixture(params=kernels.available())
def backend(request):
    return request.param


_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif report.when == "setup" and report.failed and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = "error"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance.items():
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
