import sys

import pytest

from fuzzyov import Cover, kernels

import helpers


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@pytest.fixture
def barbell():
    return helpers.barbell()


@pytest.fixture
def barbell_split():
    return Cover.crisp([["1", "2", "3"], ["4", "5", "6"]])


@pytest.fixture
def barbell_overlap():
    return Cover.crisp([["1", "2", "3", "4"], ["3", "4", "5", "6"]])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
