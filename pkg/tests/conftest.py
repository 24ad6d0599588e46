import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        title, ok, detail = mod.RESULTS[n]
        terminalreporter.write_line("criterion %2d %s: %s  %s"
                                    % (n, "PASS" if ok else "FAIL", title, detail))
