import os
import random

import pytest

SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "samples")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def samples_dir():
    return SAMPLES


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
