"""Shared pytest wiring.

Prints a one-line verdict per acceptance check at the end of the run so the
gate is readable without scrolling through the full -v listing.
"""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid or "::" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            # a call-phase verdict wins over a setup/teardown one
            if name not in rows or getattr(rep, "when", "call") == "call":
                rows[name] = outcome.upper()
    if not rows:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(rows):
        terminalreporter.write_line(f"{rows[name]:<6} {name}")
