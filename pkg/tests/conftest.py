"""Shared pytest hooks.

Acceptance tests append ``(label, passed, detail)`` to ``ACCEPTANCE`` and the
terminal summary prints one line per criterion.
"""

ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
