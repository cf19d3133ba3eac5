import random

import pytest

from qsym.fixtures import load_fixture, pullback_fixture


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240601, help="seed for randomized tests")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture(scope="session")
def ex_b():
    return load_fixture("ex-b")


@pytest.fixture(scope="session")
def ex_c():
    return load_fixture("ex-c")


@pytest.fixture(scope="session")
def k4_pullback():
    return pullback_fixture("k4")


class AcceptanceLog:
    def __init__(self):
        self.lines = []

    def record(self, number: int, ok: bool, detail: str, seconds: float) -> str:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail} ({seconds:.2f}s)"
        self.lines.append(line)
        print(line)
        return line


@pytest.fixture(scope="session")
def acceptance_log(request):
    log = AcceptanceLog()
    request.config._acceptance_log = log
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance_log", None)
    if log and log.lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(log.lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
