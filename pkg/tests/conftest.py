import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(RESULTS):
        cr = RESULTS[n]
        tr.write_line(f"{cr.line()}  [{cr.seconds:.1f}s]")
        for c in cr.checks:
            if c.passed and len(cr.checks) > 8:
                continue
            tr.write_line(f"      {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.measured} (tol {c.tolerance})")
