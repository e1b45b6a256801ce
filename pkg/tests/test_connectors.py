import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from neutral_modes.connectors import (connectors_from_gradients, fd_source_frame_gradients,
                                      fd_starred_frame_gradients, native_star_connectors,
                                      reconstruct_frame_gradients, source_connectors, spin_correction,
                                      starred_connectors, starred_curvature_connectors_projected)
from neutral_modes.deformation import state_at
from neutral_modes.weierstrass import curvature_at

from pairs import NAMES, pair, safe
from strategies import annulus_points

names = st.sampled_from(NAMES)


def close(a, b, tol=1e-6):
    scale = max(1.0, *(float(np.abs(x).max()) for x in (a.c, a.d_u, a.d_v)))
    for x, y in ((a.c, b.c), (a.d_u, b.d_u), (a.d_v, b.d_v)):
        assert np.abs(x - y).max() <= tol * scale


@given(names, annulus_points())
def test_source_connectors_match_fd(name, w):
    assume(safe(name, w))
    s = pair(name).source
    cs = source_connectors(s, w)
    close(cs, connectors_from_gradients(fd_source_frame_gradients(s, w), cs.frame()))


@given(names, annulus_points())
def test_starred_connectors_match_fd(name, w):
    assume(safe(name, w))
    d = pair(name)
    cs = starred_connectors(d, w)
    close(cs, connectors_from_gradients(fd_starred_frame_gradients(d, w), cs.frame()))


@given(names, annulus_points())
def test_projection_of_native_connectors(name, w):
    assume(safe(name, w))
    d = pair(name)
    cs = starred_connectors(d, w)
    du, dv = starred_curvature_connectors_projected(d, w)
    s = max(1.0, float(np.abs(cs.d_u).max()))
    assert du == pytest.approx(cs.d_u, abs=1e-10 * s)
    assert dv == pytest.approx(cs.d_v, abs=1e-10 * s)


@given(names, annulus_points())
def test_spin_correction(name, w):
    assume(safe(name, w))
    d = pair(name)
    c_star = starred_connectors(d, w).c
    c_native = native_star_connectors(d, w).c
    corr = spin_correction(d, w)
    assert c_star - c_native == pytest.approx(corr, abs=1e-10 * max(1.0, float(np.abs(c_star).max())))


@given(annulus_points())
def test_curvature_tensor_from_connectors(w):
    s = pair("goursat-2").source
    cs = source_connectors(s, w)
    _, _, grad_nu = reconstruct_frame_gradients(cs)
    assert grad_nu == pytest.approx(curvature_at(s, w).tensor, abs=1e-12)


def test_connectors_tangent():
    cs = starred_connectors(pair("enneper-bour3"), 1.1 + 0.3j)
    for v in (cs.c, cs.d_u, cs.d_v):
        assert abs(v @ cs.nu) < 1e-12


def test_curvature_norm_is_minus_twice_K():
    d = pair("goursat-2")
    w = 0.8 + 0.9j
    cs = source_connectors(d.source, w)
    K = curvature_at(d.source, w).gauss
    assert cs.curvature_norm2() == pytest.approx(-2 * K, rel=1e-12)
    st_ = state_at(d, w)
    assert st_.stretch_ratio > 0
