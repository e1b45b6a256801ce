import math

import pytest
from hypothesis import assume, given, strategies as st

from neutral_modes.energetics import (EnergyDensities, Moduli, bending_density, drilling_defects,
                                      drilling_density, stretching_density, stretching_from_tensors,
                                      third_rank_oracle, total, total_density)
from neutral_modes.errors import DomainViolation
from neutral_modes import reference

from pairs import NAMES, pair, safe
from strategies import annulus_points

names = st.sampled_from(NAMES)


def rel(a, b, rtol, atol=1e-12):
    return abs(a - b) <= rtol * abs(b) + atol


@given(names, annulus_points())
def test_connector_route_matches_closed_form(name, w):
    assume(safe(name, w))
    d = pair(name)
    assert rel(drilling_density(d, w, "connector"), drilling_density(d, w), 1e-8)
    assert rel(bending_density(d, w, "connector"), bending_density(d, w), 1e-8)
    assert rel(bending_density(d, w, "curvature"), bending_density(d, w), 1e-8)


@given(names, annulus_points())
def test_stretching_routes(name, w):
    assume(safe(name, w))
    d = pair(name)
    us, vs = stretching_from_tensors(d, w)
    assert rel(us, stretching_density(d, w), 1e-10)
    assert rel(vs, us, 1e-10)


@given(names, annulus_points(math.exp(-0.9), math.exp(0.9)))
def test_third_rank_oracle(name, w):
    assume(safe(name, w, 0.1))
    d = pair(name)
    o = third_rank_oracle(d, w)
    assert rel(o.w_d, drilling_density(d, w), 1e-4, 1e-8)
    assert rel(o.w_b, bending_density(d, w), 1e-4, 1e-8)


@given(annulus_points())
def test_enneper_bour3_closed_forms(w):
    d = pair("enneper-bour3")
    ws, wd, wb = reference.enneper_bour3(abs(w))
    e = total_density(d, w)
    assert rel(e.w_s, ws, 1e-9) and rel(e.w_d, wd, 1e-9) and abs(e.w_b) <= 1e-10


def test_spot_values():
    e = total_density(pair("goursat-2"), 1j)
    assert e.as_tuple() == pytest.approx((1 / 8, 36 / 25, 1296 / 625), rel=1e-12)
    assert total_density(pair("enneper-bour3"), 1j).as_tuple() == pytest.approx((0, 4, 0), abs=1e-12)


def test_drilling_defects_enneper_bour3():
    # alpha = arg w and the log term vanishes, so the defect norm is 1/|w|
    a, b = drilling_defects(pair("enneper-bour3"), 1j)
    assert math.hypot(a, b) == pytest.approx(1.0)


def test_total_weights():
    assert total(1, 2, 4, Moduli(2, 1, 0.5)) == pytest.approx(1 + 1 + 0.5)
    with pytest.raises(ValueError):
        Moduli(-1, 1, 1)


def test_metadata_and_routes():
    e = total_density(pair("dilation"), 1.0, route="connector")
    assert isinstance(e, EnergyDensities) and e.route == "connector"
    assert e.metadata["near_singular"] is False
    with pytest.raises(ValueError):
        total_density(pair("dilation"), 1.0, route="bogus")


def test_oracle_stencil_must_fit():
    with pytest.raises(DomainViolation):
        third_rank_oracle(pair("dilation"), math.e)
