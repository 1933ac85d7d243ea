import re

CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            match = CRITERION.search(getattr(rep, "nodeid", ""))
            if match and (rep.when == "call" or key != "passed"):
                rows[int(match.group(1))] = (match.group(2), "PASS" if key == "passed" else "FAIL")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(rows):
        name, verdict = rows[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {name.replace('_', ' ')}")
