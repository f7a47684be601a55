import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "artifact",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "artifact"))


@pytest.fixture(scope="session")
def tmf_run():
    """Scenario, window and stable result on |a|, |b| <= 40, s <= 64 (shared with the acceptance run)."""
    from artifact.report import hfpss_run

    return hfpss_run(40, 64)


@pytest.fixture(scope="session")
def small_tmf():
    from artifact.tmf13 import build_scenario, e_infinity_page

    sc = build_scenario("tmf13")
    w = sc.window(12, 24)
    return sc, w, e_infinity_page(sc, w)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria (tolerance: exact)")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n].line())
