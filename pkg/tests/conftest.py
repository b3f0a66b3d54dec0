import sys
from pathlib import Path

import pytest

from arcsections.polyarith import parse_poly

sys.path.insert(0, str(Path(__file__).parent))

EX71 = "z^4-4*x*z+3*y^2"
FOUR_LINES = "z^3-(x-y)*(x+y)*(x-2*y)*(x+2*y)"
SUSPENSION = "z^2-x^3-y^3"
PLANE_QUARTIC = "x^4+y^4+x^2*z^2+y*z^3+z^4"


@pytest.fixture(scope="session")
def ex71_setup():
    from arcsections.decide import setup_projection
    return setup_projection(parse_poly(EX71), "z")


@pytest.fixture(scope="session")
def ex71_tree(ex71_setup):
    from arcsections.resolve import resolve_embedded
    return resolve_embedded(ex71_setup.delta)


@pytest.fixture(scope="session")
def four_lines_setup():
    from arcsections.decide import setup_projection
    return setup_projection(parse_poly(FOUR_LINES), "z")


@pytest.fixture(scope="session")
def suspension_setup():
    from arcsections.decide import setup_projection
    return setup_projection(parse_poly(SUSPENSION), "z")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
