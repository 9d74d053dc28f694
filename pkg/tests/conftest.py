"""Shared fixtures: the acceptance log printed at the end of the run."""

from __future__ import annotations

import pytest


class AcceptanceLog:
    """One PASS/FAIL verdict per acceptance criterion, printed at exit."""

    def __init__(self) -> None:
        self.results: dict[str, tuple[bool, str]] = {}

    def check(self, key: str, ok: bool, detail: str = "") -> None:
        self.results[key] = (bool(ok), detail)
        assert ok, f"{key}: {detail or 'failed'}"


def pytest_configure(config):
    config._acceptance_log = AcceptanceLog()


@pytest.fixture(scope="session")
def acceptance(request):
    return request.config._acceptance_log


def _criterion_order(item: tuple[str, tuple[bool, str]]):
    key = item[0]
    digits = "".join(ch for ch in key if ch.isdigit())
    return (int(digits) if digits else 0, key)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance_log", None)
    if log is None or not log.results:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, detail) in sorted(log.results.items(), key=_criterion_order):
        line = f"ACCEPTANCE {key} {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
