import sys

import pytest

from homlie.catalog import load_catalog
from homlie.checks import Instances


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def ins(catalog):
    return Instances(catalog)


@pytest.fixture(scope="session")
def v(ins):
    return ins.v


@pytest.fixture(scope="session")
def w(ins):
    return ins.w


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda s: int(s.split("-")[1])):
        terminalreporter.write_line(results[name])
