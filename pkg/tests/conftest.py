from __future__ import annotations

from hypothesis import settings

settings.register_profile("cy4", max_examples=40, deadline=None)
settings.load_profile("cy4")

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
