import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from neutral_modes.deformation import (DeformationPair, curvature_ratio, polar_rotation_oracle, pushforward,
                                       state_at, target_position_at, native_from_uv)
from neutral_modes.errors import DomainViolation, SingularPoint
from neutral_modes.holomorphic import parse
from neutral_modes.weierstrass import WeierstrassSurface, gaussian_curvature, position_at

from pairs import ANNULUS, NAMES, pair, safe
from strategies import annulus_points

names = st.sampled_from(NAMES)


@given(names, annulus_points())
def test_rotation_and_stretch_structure(name, w):
    assume(safe(name, w))
    d = pair(name)
    st_ = state_at(d, w)
    R = st_.R
    assert R @ R.T == pytest.approx(np.eye(3), abs=1e-12)
    assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-12)
    assert R @ st_.frame.nu == pytest.approx(st_.nu_star, abs=1e-12)
    assert st_.U == pytest.approx(st_.U.T, abs=1e-12)
    scale = max(1.0, st_.stretch_ratio)
    assert st_.grad_y == pytest.approx(R @ st_.U, abs=1e-12 * scale)
    assert st_.grad_y == pytest.approx(st_.V @ R, abs=1e-12 * scale)


@given(names, annulus_points())
def test_polar_oracle_agrees(name, w):
    assume(safe(name, w))
    st_ = state_at(pair(name), w)
    assert polar_rotation_oracle(st_) == pytest.approx(st_.R, abs=1e-10)


@given(names, annulus_points())
def test_native_frame_round_trip(name, w):
    assume(safe(name, w))
    st_ = state_at(pair(name), w)
    eu, ev = native_from_uv(st_)
    assert eu == pytest.approx(st_.star_frame_native[0], abs=1e-12)
    assert ev == pytest.approx(st_.star_frame_native[1], abs=1e-12)


@given(names, annulus_points())
def test_curvature_ratio(name, w):
    assume(safe(name, w))
    d = pair(name)
    st_ = state_at(d, w)
    ratio = gaussian_curvature(d.target, st_.w_star) / gaussian_curvature(d.source, w)
    assert curvature_ratio(d, w) == pytest.approx(ratio, rel=1e-12)


def test_stretch_ratio_dilation():
    assert state_at(pair("dilation"), 1.3 + 0.2j).stretch_ratio == pytest.approx(2.0)


def test_target_position_identity_map():
    d = pair("dilation")
    w = 1.5 - 0.5j
    assert target_position_at(d, w) == pytest.approx(position_at(d.target, w), abs=1e-10)
    assert target_position_at(d, w) == pytest.approx(2 * position_at(d.source, w), abs=1e-10)


def test_grad_y_matches_fd_of_positions():
    d = pair("goursat-2")
    w, step = 1.2 + 0.7j, 1e-5
    st_ = state_at(d, w)
    y = lambda z: target_position_at(d, z)
    yu = (y(w + step) - y(w - step)) / (2 * step)
    yv = (y(w + 1j * step) - y(w - 1j * step)) / (2 * step)
    fr = st_.frame
    assert st_.grad_y @ (fr.metric_factor * fr.e_u) == pytest.approx(yu, abs=1e-7)
    assert st_.grad_y @ (fr.metric_factor * fr.e_v) == pytest.approx(yv, abs=1e-7)


def test_containment_violation():
    src = WeierstrassSurface(parse("const(1)"), ANNULUS, 1)
    tgt = WeierstrassSurface(parse("const(1)"), ANNULUS, 2)
    with pytest.raises(DomainViolation):
        DeformationPair(src, tgt, parse("scale(3,id)"))


def test_pushforward_checks_domains():
    d = pair("goursat-2")
    assert pushforward(d, 1j) == pytest.approx(2j)
    with pytest.raises(DomainViolation):
        pushforward(d, 5)


def test_pole_of_h_is_excluded():
    d = pair("soft")
    with pytest.raises(SingularPoint):
        state_at(d, 1.0)
