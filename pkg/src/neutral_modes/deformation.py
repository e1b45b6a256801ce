"""Conformal deformations between two minimal surfaces.

A pair ``(S, S*, h)`` induces ``y(r(w)) = r*(h(w))``.  The surface deformation
gradient, its rotation and both stretch tensors are assembled in closed form
from the two Weierstrass frames and ``h'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec
from scipy.linalg import polar

from .errors import DomainViolation, InvalidParams, SingularPoint
from .holomorphic import HolomorphicFn, compose, continue_arg
from .weierstrass import QUAD_TOL, SurfaceFrame, WeierstrassSurface, frame_from_value

CONTAINMENT_LATTICE = 64
MIN_HPRIME = 1e-12


@dataclass(frozen=True)
class DeformationPair:
    source: WeierstrassSurface
    target: WeierstrassSurface
    h: HolomorphicFn
    check_lattice: int = CONTAINMENT_LATTICE

    def __post_init__(self):
        object.__setattr__(self, "h_prime", self.h.derivative())
        object.__setattr__(self, "h_second", self.h_prime.derivative())
        object.__setattr__(self, "F_prime", self.source.F.derivative())
        object.__setattr__(self, "Fstar_prime", self.target.F.derivative())
        object.__setattr__(self, "Fstar_of_h", compose(self.target.F, self.h))
        if self.check_lattice:
            check_containment(self, self.check_lattice)

    def path_to(self, w: complex):
        return self.source.path_to(w)

    def star_anchor(self) -> complex:
        return self.h(self.source.basepoint)


def lattice_points(domain, n: int) -> list[complex]:
    """Interior probe lattice; annuli are sampled in (log rho, theta)."""
    pts = []
    if domain.kind == "annulus":
        lo, hi = domain.params
        for lr in np.linspace(math.log(lo), math.log(hi), n + 2)[1:-1]:
            for th in np.linspace(0, 2 * math.pi, n, endpoint=False):
                pts.append(complex(math.exp(lr) * math.cos(th), math.exp(lr) * math.sin(th)))
    elif domain.kind == "plane":
        for x in np.linspace(-2, 2, n):
            for y in np.linspace(-2, 2, n):
                pts.append(complex(x, y))
    else:
        u0, u1, v0, v1 = domain.bounding_box()
        for x in np.linspace(u0, u1, n + 2)[1:-1]:
            for y in np.linspace(v0, v1, n + 2)[1:-1]:
                pts.append(complex(x, y))
    return [z for z in pts if domain.contains(z) and not domain.is_excluded(z)]


def check_containment(d: DeformationPair, n: int = CONTAINMENT_LATTICE) -> None:
    """Probe ``h(Ω) ⊂ Ω*`` and ``|h'| > 0`` on a lattice."""
    poles = d.h.poles()
    for w in lattice_points(d.source.domain, n):
        if any(abs(w - p) < 1e-6 for p in poles):
            continue
        try:
            hw = d.h(w)
            hp = d.h_prime(w)
        except SingularPoint:
            continue
        if abs(hp) < MIN_HPRIME:
            raise InvalidParams(f"|h'| vanishes near {w!r}")
        if not d.target.domain.contains(hw):
            raise DomainViolation(f"h({w!r}) = {hw!r} lies outside the target domain")


def pushforward(d: DeformationPair, w: complex) -> complex:
    w = d.source.domain.check(w)
    hw = d.h(w)
    return d.target.domain.check(hw)


@dataclass(frozen=True)
class DeformationState:
    w: complex
    w_star: complex
    frame: SurfaceFrame
    star_frame_uv: tuple[np.ndarray, np.ndarray]
    star_frame_native: tuple[np.ndarray, np.ndarray]
    nu_star: np.ndarray
    grad_y: np.ndarray
    R: np.ndarray
    U: np.ndarray
    V: np.ndarray
    stretch_ratio: float
    h_prime: complex
    star_frame: SurfaceFrame  # native frame of S* at w*


def star_chi(d: DeformationPair, w: complex, path=None) -> float:
    """``χ*(h(w))`` continued along the image under ``h`` of the source path,
    starting from the principal value at ``h(basepoint)``."""
    if path is None:
        path = d.path_to(w)
    return continue_arg(d.Fstar_of_h, path)


def source_chi(d: DeformationPair, w: complex, path=None) -> float:
    if path is None:
        path = d.path_to(w)
    return continue_arg(d.source.F, path)


def state_at(d: DeformationPair, w: complex, track_chi: bool = False) -> DeformationState:
    """Deformation state at ``w``.  Frames only depend on ``F/|F|``, so the
    continued arguments are computed only when ``track_chi`` is set."""
    w = d.source.domain.check(w)
    w_star = d.target.domain.check(d.h(w))
    Fw = d.source.F(w)
    Fs = d.target.F(w_star)
    hp = d.h_prime(w)
    ahp = abs(hp)
    if ahp < MIN_HPRIME:
        raise SingularPoint(f"h' vanishes at {w!r}")
    chi = chi_s = None
    if track_chi:
        path = d.path_to(w)
        chi, chi_s = source_chi(d, w, path), star_chi(d, w, path)
    fr = frame_from_value(w, Fw, chi)
    sfr = frame_from_value(w_star, Fs, chi_s)
    p, q = hp.real, hp.imag  # h_u,u = h_v,v and h_v,u = -h_u,v
    es_u = (p * sfr.e_u + q * sfr.e_v) / ahp
    es_v = (-q * sfr.e_u + p * sfr.e_v) / ahp
    ratio = (abs(Fs) / abs(Fw)) * ahp * (1 + abs(w_star) ** 2) / (1 + abs(w) ** 2)
    grad_y = ratio * (np.outer(es_u, fr.e_u) + np.outer(es_v, fr.e_v))
    R = np.outer(es_u, fr.e_u) + np.outer(es_v, fr.e_v) + np.outer(sfr.nu, fr.nu)
    I = np.eye(3)
    U = ratio * (I - np.outer(fr.nu, fr.nu))
    V = ratio * (I - np.outer(sfr.nu, sfr.nu))
    return DeformationState(w=w, w_star=w_star, frame=fr, star_frame_uv=(es_u, es_v),
                            star_frame_native=(sfr.e_u, sfr.e_v), nu_star=sfr.nu,
                            grad_y=grad_y, R=R, U=U, V=V, stretch_ratio=ratio,
                            h_prime=hp, star_frame=sfr)


def polar_rotation_oracle(st: DeformationState) -> np.ndarray:
    """Rotation from a numerical polar decomposition of ``∇y + ν*⊗ν``."""
    full = st.grad_y + np.outer(st.nu_star, st.frame.nu)
    rot, _ = polar(full, side="right")
    return rot


def native_from_uv(st: DeformationState) -> tuple[np.ndarray, np.ndarray]:
    """Invert the frame change: recover ``(e*_u*, e*_v*)`` from ``(e*_u, e*_v)``."""
    p, q = st.h_prime.real, st.h_prime.imag
    a = abs(st.h_prime)
    es_u, es_v = st.star_frame_uv
    return (p * es_u - q * es_v) / a, (q * es_u + p * es_v) / a


def curvature_ratio(d: DeformationPair, w: complex) -> float:
    """``K*(h(w)) / K(w) = e^{-2(Φ* - Φ)} (1 + |w|²)^4 / (1 + |h|²)^4``."""
    w = d.source.domain.check(w)
    w_star = d.target.domain.check(d.h(w))
    e = abs(d.source.F(w)) / abs(d.target.F(w_star))
    return e * e * ((1 + abs(w) ** 2) / (1 + abs(w_star) ** 2)) ** 4


def target_position_at(d: DeformationPair, w: complex, path=None) -> np.ndarray:
    """``r*(h(w))`` integrated over the source domain by pulling the starred
    Weierstrass form back through ``h`` (avoids paths in the target domain)."""
    w = d.source.domain.check(w)
    if path is None:
        path = d.path_to(w)
    pulled = compose(d.target.F, d.h) * d.h_prime
    return np.asarray(d.target.translation) + _integrate_pulled(pulled, d.h, path)


def _integrate_pulled(G: HolomorphicFn, h: HolomorphicFn, path) -> np.ndarray:
    total = np.zeros(3)
    for seg in path:
        def integrand(t, seg=seg):
            z = seg.point(t)
            hz = h(z)
            g = G(z) * seg.tangent(t)
            h2 = hz * hz
            return np.array([0.5 * (1 - h2) * g, 0.5j * (1 + h2) * g, hz * g]).real

        val, _ = quad_vec(integrand, 0.0, 1.0, epsabs=QUAD_TOL, epsrel=0.0, quadrature="gk15", limit=2000)
        total += val
    return total
