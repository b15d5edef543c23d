from __future__ import annotations

from hypothesis import settings

settings.register_profile("shapkit", deadline=None, derandomize=True)
settings.load_profile("shapkit")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
    missing = [n for n in range(1, 13) if n not in mod.RESULTS]
    if missing:
        terminalreporter.write_line(f"not run: criteria {missing}")
