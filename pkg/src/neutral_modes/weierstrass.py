"""Minimal surfaces from Weierstrass data ``F``.

The surface is ``r(w) = Re ∫ F(w) (½(1 - w²), ½ i (1 + w²), w) dw`` plus a
translation.  Frames, normals and curvature use the explicit closed forms in
terms of ``Φ = ln|F|`` and ``χ = arg F``; only the position needs quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import quad_vec

from .domain import EXCLUSION_RADIUS, DomainSpec, default_path
from .errors import InvalidParams, ZeroCrossing
from .holomorphic import HolomorphicFn, log_decompose

QUAD_TOL = 1e-10


@dataclass(frozen=True)
class WeierstrassSurface:
    F: HolomorphicFn
    domain: DomainSpec
    basepoint: complex = 0j
    translation: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "basepoint", complex(self.basepoint))
        object.__setattr__(self, "translation", tuple(float(x) for x in self.translation))
        self.domain.check(self.basepoint)
        if self.F(self.basepoint) == 0:
            raise InvalidParams("F vanishes at the basepoint")

    def avoid(self) -> tuple[tuple[complex, float], ...]:
        return tuple((z, EXCLUSION_RADIUS) for z in self.F.poles() + self.F.zeros())

    def path_to(self, w: complex):
        return default_path(self.domain, self.basepoint, w, self.avoid())


@dataclass(frozen=True)
class SurfaceFrame:
    w: complex
    r: np.ndarray | None
    e_u: np.ndarray
    e_v: np.ndarray
    nu: np.ndarray
    metric_factor: float
    phi: float
    chi: float


@dataclass(frozen=True)
class CurvatureState:
    shape_operator: np.ndarray  # 2x2 in the (e_u, e_v) basis
    mean: float
    gauss: float
    tensor: np.ndarray  # 3x3 ambient form of the curvature tensor


def _scaled_frame(w: complex, cos_chi: float, sin_chi: float):
    """Unit tangents and normal; every component is divided by 1 + |w|^2."""
    u, v = w.real, w.imag
    q = 1.0 + u * u + v * v
    a = 0.5 * (1 - u * u + v * v)
    b = 0.5 * (1 + u * u - v * v)
    uv = u * v
    e_u = np.array([uv * sin_chi + a * cos_chi,
                    -(uv * cos_chi + b * sin_chi),
                    u * cos_chi - v * sin_chi]) * (2.0 / q)
    e_v = np.array([uv * cos_chi - a * sin_chi,
                    uv * sin_chi - b * cos_chi,
                    -(u * sin_chi + v * cos_chi)]) * (2.0 / q)
    nu = np.array([2 * u, 2 * v, u * u + v * v - 1]) / q
    return e_u, e_v, nu


def frame_from_value(w: complex, Fw: complex, chi: float | None = None) -> SurfaceFrame:
    """Frame at ``w`` from the value ``F(w)``; ``chi`` defaults to the principal argument."""
    w = complex(w)
    if Fw == 0:
        raise ZeroCrossing(f"F vanishes at {w!r}")
    mod = abs(Fw)
    c, s = Fw.real / mod, Fw.imag / mod
    e_u, e_v, nu = _scaled_frame(w, c, s)
    if chi is None:
        chi = math.atan2(s, c)
    return SurfaceFrame(w=w, r=None, e_u=e_u, e_v=e_v, nu=nu,
                        metric_factor=0.5 * mod * (1 + abs(w) ** 2),
                        phi=math.log(mod), chi=float(chi))


def frame_at(s: WeierstrassSurface, w: complex, with_position: bool = False,
             track_chi: bool = True) -> SurfaceFrame:
    """Frame, normal, metric factor and ``(Φ, χ)`` at ``w``.

    ``χ`` is continued from the principal value at the basepoint; pass
    ``track_chi=False`` to use the principal value (the frame itself only
    depends on ``F/|F|``).
    """
    w = s.domain.check(w)
    Fw = s.F(w)
    chi = None
    if track_chi:
        chi = log_decompose(s.F, w, s.basepoint, path=s.path_to(w)).chi
    fr = frame_from_value(w, Fw, chi)
    if with_position:
        fr = SurfaceFrame(**{**fr.__dict__, "r": position_at(s, w)})
    return fr


def metric_vectors(s: WeierstrassSurface, w: complex) -> tuple[np.ndarray, np.ndarray]:
    """``(r_,u, r_,v)`` from the explicit component formulas."""
    fr = frame_at(s, w, track_chi=False)
    return fr.metric_factor * fr.e_u, fr.metric_factor * fr.e_v


def normal_derivatives(s: WeierstrassSurface, w: complex) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form ``(ν_,u, ν_,v)``."""
    fr = frame_at(s, w, track_chi=False)
    k = 2.0 / (1 + abs(fr.w) ** 2)
    c, sn = math.cos(fr.chi), math.sin(fr.chi)
    return k * (c * fr.e_u - sn * fr.e_v), -k * (sn * fr.e_u + c * fr.e_v)


def weierstrass_integrand(F: HolomorphicFn, w: complex) -> np.ndarray:
    """Complex 3-vector ``F(w) (½(1 - w²), ½ i (1 + w²), w)``."""
    Fw = F(w)
    w2 = w * w
    return np.array([0.5 * (1 - w2) * Fw, 0.5j * (1 + w2) * Fw, w * Fw])


def integrate_segment(F: HolomorphicFn, seg, tol: float = QUAD_TOL) -> np.ndarray:
    """Real part of the Weierstrass integral along one path segment
    (adaptive 15-point Gauss-Kronrod with bisection)."""

    def integrand(t):
        return (weierstrass_integrand(F, seg.point(t)) * seg.tangent(t)).real

    value, _err = quad_vec(integrand, 0.0, 1.0, epsabs=tol, epsrel=0.0, quadrature="gk15", limit=2000)
    return value


def integrate_path(F: HolomorphicFn, path: Sequence, tol: float = QUAD_TOL) -> np.ndarray:
    total = np.zeros(3)
    for seg in path:
        total += integrate_segment(F, seg, tol)
    return total


def position_at(s: WeierstrassSurface, w: complex, path: Sequence | None = None,
                tol: float = QUAD_TOL) -> np.ndarray:
    """Position ``r(w)``: the translation plus the integral from the basepoint.

    On annuli the value depends on the homotopy class of the path when
    ``F`` has nonzero periods (Bour surfaces); the default path is the first
    admissible staircase, falling back to radial-then-angular.
    """
    w = s.domain.check(w)
    if path is None:
        path = s.path_to(w)
    return np.asarray(s.translation) + integrate_path(s.F, path, tol)


def curvature_from_frame(fr: SurfaceFrame) -> CurvatureState:
    q = 1 + abs(fr.w) ** 2
    k = 4 * math.exp(-fr.phi) / q ** 2
    c, sn = math.cos(fr.chi), math.sin(fr.chi)
    shape = k * np.array([[c, -sn], [-sn, -c]])
    basis = np.stack([fr.e_u, fr.e_v], axis=1)  # 3x2
    tensor = basis @ shape @ basis.T
    return CurvatureState(shape_operator=shape, mean=0.5 * float(np.trace(shape)),
                          gauss=float(np.linalg.det(shape)), tensor=tensor)


def curvature_at(s: WeierstrassSurface, w: complex) -> CurvatureState:
    return curvature_from_frame(frame_at(s, w, track_chi=False))


def gaussian_curvature(s: WeierstrassSurface, w: complex) -> float:
    """``K = -16 e^{-2Φ} / (1 + |w|²)^4`` evaluated directly."""
    w = s.domain.check(w)
    return -16.0 / (abs(s.F(w)) ** 2 * (1 + abs(w) ** 2) ** 4)
