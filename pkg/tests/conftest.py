import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    results = {}
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", None) != "call":
                continue
            m = _CRITERION.search(rep.nodeid)
            if m:
                results[int(m.group(1))] = (m.group(2), outcome == "passed")
    if not results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for num in sorted(results):
        name, ok = results[num]
        terminalreporter.write_line(
            f"  [criterion {num:2d}] {name.replace('_', ' ')}: "
            f"{'PASS' if ok else 'FAIL'}")
