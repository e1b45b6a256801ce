import math

import numpy as np
import pytest
from hypothesis import given

from neutral_modes.domain import DomainSpec, polar_path
from neutral_modes.errors import InvalidParams, SingularPoint
from neutral_modes.holomorphic import parse
from neutral_modes.weierstrass import (WeierstrassSurface, curvature_at, frame_at, gaussian_curvature,
                                       metric_vectors, normal_derivatives, position_at,
                                       weierstrass_integrand)

from strategies import annulus_points, complex_in_box


def enneper_exact(w: complex) -> np.ndarray:
    """Enneper's surface in closed polynomial form."""
    return np.array([(w / 2 - w ** 3 / 6).real, (1j * (w / 2 + w ** 3 / 6)).real, (w * w / 2).real])


def test_enneper_spot_values(enneper):
    assert position_at(enneper, 1) == pytest.approx([1 / 3, 0, 1 / 2], abs=1e-12)
    assert frame_at(enneper, 0).nu == pytest.approx([0, 0, -1])
    assert frame_at(enneper, 1).nu == pytest.approx([1, 0, 0])
    assert gaussian_curvature(enneper, 0) == pytest.approx(-16)


@given(complex_in_box(-1.3, 1.3))
def test_enneper_position_matches_polynomial(enneper, w):
    assert np.abs(position_at(enneper, w) - enneper_exact(w)).max() <= 1e-10


def test_bour1_period_around_origin(bour1):
    loop = polar_path(1, 1, 2 * math.pi)
    assert position_at(bour1, 1, path=loop) == pytest.approx([0, -math.pi, 0], abs=1e-10)


def test_translation_is_added():
    s = WeierstrassSurface(parse("const(1)"), DomainSpec.disk(1), 0, translation=(1, 2, 3))
    assert position_at(s, 0) == pytest.approx([1, 2, 3])


def test_basepoint_checks():
    with pytest.raises(SingularPoint):
        WeierstrassSurface(parse("recip(id)"), DomainSpec.disk(1).with_exclusions([0]), 0)
    with pytest.raises(InvalidParams):
        WeierstrassSurface(parse("id"), DomainSpec.disk(1), 0)


@given(annulus_points())
def test_conformal_metric_and_frame(bour3, w):
    phi = weierstrass_integrand(bour3.F, w)
    ru, rv = metric_vectors(bour3, w)
    assert ru == pytest.approx(phi.real, rel=1e-12, abs=1e-14)
    assert rv == pytest.approx(-phi.imag, rel=1e-12, abs=1e-14)
    assert np.linalg.norm(ru) == pytest.approx(0.5 * abs(w) * (1 + abs(w) ** 2))
    fr = frame_at(bour3, w, track_chi=False)
    basis = np.stack([fr.e_u, fr.e_v, fr.nu])
    assert basis @ basis.T == pytest.approx(np.eye(3), abs=1e-13)
    assert np.linalg.det(basis) == pytest.approx(1.0)


@given(annulus_points())
def test_normal_derivatives_fd(bour1, w):
    step = 1e-6
    nu = lambda z: frame_at(bour1, z, track_chi=False).nu
    nu_u, nu_v = normal_derivatives(bour1, w)
    assert nu_u == pytest.approx((nu(w + step) - nu(w - step)) / (2 * step), abs=1e-7)
    assert nu_v == pytest.approx((nu(w + 1j * step) - nu(w - 1j * step)) / (2 * step), abs=1e-7)


@given(annulus_points())
def test_curvature_invariants(bour1, w):
    c = curvature_at(bour1, w)
    assert abs(c.mean) <= 1e-12 * max(1, abs(c.gauss))
    assert c.gauss == pytest.approx(gaussian_curvature(bour1, w), rel=1e-12)
    assert c.gauss == pytest.approx(-16 * abs(w) ** 2 / (1 + abs(w) ** 2) ** 4, rel=1e-12)
    assert c.tensor == pytest.approx(c.tensor.T, abs=1e-14)


def test_chi_continued_along_path(bour3):
    fr = frame_at(bour3, -1 + 0.01j)
    assert fr.chi == pytest.approx(math.atan2(0.01, -1), abs=1e-12)
