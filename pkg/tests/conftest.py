import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance criterion number -> (passed, summary), filled by test_acceptance
CRITERIA = {}


def pytest_runtest_makereport(item, call):
    n = getattr(item.function, "criterion", None)
    if n is not None and call.when == "call":
        CRITERIA[n] = (call.excinfo is None, item.function.__doc__.strip().splitlines()[0])


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, summary = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {summary}")
