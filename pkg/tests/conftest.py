import pytest

from geodesic_gaps.exact import ExactTrace
from geodesic_gaps.fuchsian import bolza_group, enumerate_classes
from geodesic_gaps.simple_geodesics import classify

DEEP_LIMIT = ExactTrace(109, 77)


@pytest.fixture(scope="session")
def G():
    return bolza_group()


@pytest.fixture(scope="session")
def short_classes(G):
    """Classified classes up to half-trace 21+15√2."""
    return classify(G, enumerate_classes(G, ExactTrace(21, 15)))


@pytest.fixture(scope="session")
def deep_classes(G):
    """Classified classes up to half-trace 109+77√2; takes under a minute."""
    return classify(G, enumerate_classes(G, DEEP_LIMIT), threads=4)


# criterion number -> (ok, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
