from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list = []


def pytest_addoption(parser):
    parser.addoption(
        "--run-optin",
        action="store_true",
        default=False,
        help="also run the slow opt-in tier (E7/E8 index, F4 sweep)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-optin"):
        return
    skip = pytest.mark.skip(reason="opt-in tier; pass --run-optin")
    for item in items:
        if "optin" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
