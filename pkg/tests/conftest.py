def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion, whatever else ran."""
    rows = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance.py" in report.nodeid:
                rows.append((report.nodeid.split("::", 1)[1], status))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in sorted(rows):
        label = "PASS" if status == "passed" else "FAIL"
        terminalreporter.write_line(f"{label} {name}")
