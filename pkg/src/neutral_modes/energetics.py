"""Stretching, drilling and bending energy densities.

Three independent routes are provided:

* ``closed_form``: expressions in ``Φ, χ, Φ*, χ*`` and ``h`` valid for
  deformations between minimal surfaces;
* ``connector``: ``W_d = 4|V c* - R c|²`` and
  ``W_b = 4(|V ∇*ν*|² - |∇ν|²)²`` from the frame connectors;
* ``third_rank_oracle``: ``ℋ = Rᵀ∇R`` from central differences of the
  rotation field, contracted as in the definitions of the pure measures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connectors import source_connectors, starred_connectors
from .deformation import DeformationPair, state_at
from .errors import DomainViolation
from .weierstrass import curvature_from_frame

ROUTES = ("closed_form", "connector", "third_rank_oracle")
NEAR_SINGULAR_RADIUS = 1e-3
ORACLE_STEP = 1e-4


@dataclass(frozen=True)
class Moduli:
    mu_s: float = 1.0
    mu_d: float = 1.0
    mu_b: float = 1.0

    def __post_init__(self):
        if min(self.mu_s, self.mu_d, self.mu_b) < 0:
            raise ValueError("moduli must be nonnegative")


@dataclass(frozen=True)
class EnergyDensities:
    w_s: float
    w_d: float
    w_b: float
    w_total: float
    route: str
    metadata: dict = field(default_factory=dict, compare=False)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w_s, self.w_d, self.w_b)


def total(w_s: float, w_d: float, w_b: float, moduli: Moduli) -> float:
    return 0.5 * moduli.mu_s * w_s + 0.5 * moduli.mu_d * w_d + 0.25 * moduli.mu_b * w_b


@dataclass(frozen=True)
class _PointData:
    """Everything the closed forms need at one parameter point."""

    w: complex
    hw: complex
    hp: complex
    ratio: float  # |r*_,u| / |r_,u|
    K: float
    grad_alpha: tuple[float, float]
    grad_log_term: tuple[float, float]  # gradient of ln((1+|h|²)|h'|/(1+|w|²))


def _point_data(d: DeformationPair, w: complex) -> _PointData:
    w = d.source.domain.check(w)
    hw = d.target.domain.check(d.h(w))
    Fw = d.source.F(w)
    Fs = d.target.F(hw)
    hp = d.h_prime(w)
    hpp = d.h_second(w)
    q, qh = 1 + abs(w) ** 2, 1 + abs(hw) ** 2
    ratio = abs(Fs) / abs(Fw) * abs(hp) * qh / q
    K = -16.0 / (abs(Fw) ** 2 * q ** 4)
    # α = χ*∘h - χ; both are imaginary parts of logarithms
    G = d.Fstar_prime(hw) / Fs * hp - d.F_prime(w) / Fw
    hh = hw.conjugate() * hp
    L = hpp / hp
    Lu = 2 * hh.real / qh + L.real - 2 * w.real / q
    Lv = -2 * hh.imag / qh - L.imag - 2 * w.imag / q
    return _PointData(w=w, hw=hw, hp=hp, ratio=ratio, K=K, grad_alpha=(G.imag, G.real), grad_log_term=(Lu, Lv))


def stretching_density(d: DeformationPair, w: complex) -> float:
    """``2 (e^{Φ*-Φ} |h'| (1+|h|²)/(1+|w|²) - 1)²``."""
    p = _point_data(d, w)
    return 2.0 * (p.ratio - 1.0) ** 2


def stretching_from_tensors(d: DeformationPair, w: complex) -> tuple[float, float]:
    """``(|U - P(ν)|², |V - P(ν*)|²)`` from the assembled stretch tensors."""
    st = state_at(d, w)
    I = np.eye(3)
    a = st.U - (I - np.outer(st.frame.nu, st.frame.nu))
    b = st.V - (I - np.outer(st.nu_star, st.nu_star))
    return float(np.sum(a * a)), float(np.sum(b * b))


def drilling_defects(d: DeformationPair, w: complex) -> tuple[float, float]:
    """The two drilling defects ``α_,u - L_,v`` and ``α_,v + L_,u`` with
    ``L = ln((1+|h|²)|h'|/(1+|w|²))``."""
    p = _point_data(d, w)
    au, av = p.grad_alpha
    Lu, Lv = p.grad_log_term
    return au - Lv, av + Lu


def _drilling_closed(p: _PointData) -> float:
    au, av = p.grad_alpha
    Lu, Lv = p.grad_log_term
    return -p.K * (1 + abs(p.w) ** 2) ** 2 * ((au - Lv) ** 2 + (av + Lu) ** 2)


def _bending_closed(p: _PointData) -> float:
    x = abs(p.hp) * (1 + abs(p.w) ** 2) / (1 + abs(p.hw) ** 2)
    return 16.0 * p.K ** 2 * (x * x - 1.0) ** 2


def _connector_densities(d: DeformationPair, w: complex) -> tuple[float, float]:
    st = state_at(d, w)
    cs = source_connectors(d.source, st.w, d.F_prime)
    cs_star = starred_connectors(d, st.w, state=st)
    diff = st.V @ cs_star.c - st.R @ cs.c
    w_d = 4.0 * float(diff @ diff)
    w_b = 4.0 * (st.stretch_ratio ** 2 * cs_star.curvature_norm2() - cs.curvature_norm2()) ** 2
    return w_d, w_b


def drilling_density(d: DeformationPair, w: complex, route: str = "closed_form") -> float:
    if route == "closed_form":
        return _drilling_closed(_point_data(d, w))
    if route == "connector":
        return _connector_densities(d, w)[0]
    if route == "third_rank_oracle":
        return third_rank_oracle(d, w).w_d
    raise ValueError(f"unknown route {route!r}")


def bending_density(d: DeformationPair, w: complex, route: str = "closed_form") -> float:
    if route == "closed_form":
        return _bending_closed(_point_data(d, w))
    if route == "connector":
        return _connector_densities(d, w)[1]
    if route == "curvature":
        p = _point_data(d, w)
        Ks = -16.0 / (abs(d.target.F(p.hw)) ** 2 * (1 + abs(p.hw) ** 2) ** 4)
        return 16.0 * (p.ratio ** 2 * Ks - p.K) ** 2
    if route == "third_rank_oracle":
        return third_rank_oracle(d, w).w_b
    raise ValueError(f"unknown route {route!r}")


def _metadata(w: complex) -> dict:
    return {"near_singular": abs(w) < NEAR_SINGULAR_RADIUS}


def total_density(d: DeformationPair, w: complex, moduli: Moduli = Moduli(), route: str = "closed_form") -> EnergyDensities:
    """All three densities and the weighted total
    ``½μ_s W_s + ½μ_d W_d + ¼μ_b W_b``."""
    if route == "closed_form":
        p = _point_data(d, w)
        w_s = 2.0 * (p.ratio - 1.0) ** 2
        w_d, w_b = _drilling_closed(p), _bending_closed(p)
    elif route == "connector":
        w_s = stretching_from_tensors(d, w)[0]
        w_d, w_b = _connector_densities(d, w)
    elif route == "third_rank_oracle":
        return third_rank_oracle(d, w, moduli=moduli)
    else:
        raise ValueError(f"unknown route {route!r}")
    return EnergyDensities(w_s, w_d, w_b, total(w_s, w_d, w_b, moduli), route, _metadata(complex(w)))


# ---------------------------------------------------------------------------
# third-rank tensor oracle


def _levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    return eps


EPS = _levi_civita()


def skew(v: np.ndarray) -> np.ndarray:
    """``W(v)`` with ``W(v) a = v × a``."""
    return np.einsum("ijk,j->ik", EPS, v)


def rotation_gradient(d: DeformationPair, w: complex, step: float | None = None) -> np.ndarray:
    """``(∇R)_ijk = R_ij,u (e_u)_k/|r_,u| + R_ij,v (e_v)_k/|r_,v|`` by central differences."""
    w = complex(w)
    if step is None:
        step = ORACLE_STEP * max(1.0, abs(w))
    dom = d.source.domain
    stencil = (w + step, w - step, w + 1j * step, w - 1j * step)
    for z in stencil:
        if not dom.contains(z) or dom.is_excluded(z):
            raise DomainViolation(f"oracle stencil at {w!r} leaves the domain")
    Rp, Rm, Rvp, Rvm = (state_at(d, z).R for z in stencil)
    st = state_at(d, w)
    R_u = (Rp - Rm) / (2 * step)
    R_v = (Rvp - Rvm) / (2 * step)
    fr = st.frame
    grad = (np.einsum("ij,k->ijk", R_u, fr.e_u) + np.einsum("ij,k->ijk", R_v, fr.e_v)) / fr.metric_factor
    return grad


def third_rank_measures(R: np.ndarray, grad_R: np.ndarray, nu: np.ndarray, grad_nu: np.ndarray) -> tuple[float, float]:
    """``(W_d, W_b)`` from ``ℋ = Rᵀ∇R`` with ``A∘ℋ = A_ij H_ijk e_k`` and
    ``ℋ∘A = H_ijk A_jk e_i``."""
    H = np.einsum("li,ljk->ijk", R, grad_R)
    WH = np.einsum("ij,ijk->k", skew(nu), H)
    w_d = float(WH @ WH)
    H_nu = np.einsum("ijk,jk->i", H, grad_nu)
    inner = float(np.sum(H * H)) - 0.5 * w_d - 4.0 * float(nu @ H_nu)
    return w_d, inner * inner


def third_rank_oracle(d: DeformationPair, w: complex, step: float | None = None,
                      moduli: Moduli = Moduli()) -> EnergyDensities:
    st = state_at(d, w)
    grad_R = rotation_gradient(d, st.w, step)
    curv = curvature_from_frame(st.frame)
    w_d, w_b = third_rank_measures(st.R, grad_R, st.frame.nu, curv.tensor)
    w_s = stretching_from_tensors(d, st.w)[0]
    return EnergyDensities(w_s, w_d, w_b, total(w_s, w_d, w_b, moduli), "third_rank_oracle", _metadata(st.w))
