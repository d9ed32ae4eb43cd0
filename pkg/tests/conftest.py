"""Shared fixtures: prime field, rationals and the small determinantal rings."""
import os

import pytest
from hypothesis import HealthCheck, settings

from canonica import QQ, PrimeField, build_det_ring

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GF = PrimeField(32003)
FIELDS = {"gf": GF, "qq": QQ}


@pytest.fixture(scope="session")
def gf():
    return GF


@pytest.fixture(scope="session", params=sorted(FIELDS))
def field(request):
    return FIELDS[request.param]


@pytest.fixture(scope="session")
def det321():
    return build_det_ring(GF, 3, 2, 1)


@pytest.fixture(scope="session")
def det321_qq():
    return build_det_ring(QQ, 3, 2, 1)


@pytest.fixture(scope="session")
def det221():
    return build_det_ring(GF, 2, 2, 1)


@pytest.fixture(scope="session")
def det421():
    return build_det_ring(GF, 4, 2, 1)


# -- acceptance summary ---------------------------------------------------------------

ACCEPTANCE: dict[int, dict[str, str]] = {}
ACCEPTANCE_TITLES: dict[int, str] = {}


@pytest.fixture
def acceptance(request):
    """Record one part of a numbered criterion; it stays FAIL unless the test body finishes."""
    def start(number, title, part):
        ACCEPTANCE_TITLES[number] = title
        ACCEPTANCE.setdefault(number, {})[part] = "FAIL"

        def done():
            ACCEPTANCE[number][part] = "PASS"
        return done
    return start


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[number]
        status = "PASS" if all(v == "PASS" for v in parts.values()) else "FAIL"
        detail = ", ".join(f"{k}={v}" for k, v in sorted(parts.items()))
        terminalreporter.write_line(f"criterion {number:2d} {status}  {ACCEPTANCE_TITLES[number]} [{detail}]")
