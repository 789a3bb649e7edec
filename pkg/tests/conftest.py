import random

import pytest

DEFAULT_SEED = 20240611


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized tests")


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.acceptance_lines
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])


try:
    from hypothesis import settings
except ImportError:  # pragma: no cover
    pass
else:
    settings.register_profile("pinned", derandomize=True, deadline=None, max_examples=100)
    settings.load_profile("pinned")
