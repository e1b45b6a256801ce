import math

import pytest
from hypothesis import HealthCheck, settings

from neutral_modes.domain import DomainSpec
from neutral_modes.holomorphic import parse
from neutral_modes.weierstrass import WeierstrassSurface

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ANNULUS = DomainSpec.annulus(math.exp(-1), math.e)


@pytest.fixture(scope="session")
def annulus():
    return ANNULUS


@pytest.fixture(scope="session")
def enneper():
    return WeierstrassSurface(parse("const(1)"), DomainSpec.disk(2.0), 0)


@pytest.fixture(scope="session")
def bour1():
    return WeierstrassSurface(parse("recip(id)"), ANNULUS, 1)


@pytest.fixture(scope="session")
def bour3():
    return WeierstrassSurface(parse("id"), ANNULUS, 1)


# acceptance criteria report: name -> (passed, detail)
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
