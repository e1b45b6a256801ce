"""Spin and curvature connectors of the Weierstrass moving frames.

For a frame ``(e_u, e_v, ν)`` the connectors ``(c, d_u, d_v)`` satisfy::

    ∇e_u =  e_v ⊗ c + ν ⊗ d_u
    ∇e_v = -e_u ⊗ c + ν ⊗ d_v
    ∇ν   = -e_u ⊗ d_u - e_v ⊗ d_v

All derivatives of ``χ`` and ``ln|h'|`` come from exact logarithmic
derivatives (``F'/F``, ``h''/h'``), never from finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .deformation import DeformationPair, state_at
from .weierstrass import WeierstrassSurface, frame_at

FRAME_TAGS = ("source", "starred_uv", "starred_native")


@dataclass(frozen=True)
class ConnectorSet:
    c: np.ndarray
    d_u: np.ndarray
    d_v: np.ndarray
    frame_tag: str
    e_u: np.ndarray
    e_v: np.ndarray
    nu: np.ndarray

    def frame(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.e_u, self.e_v, self.nu

    def curvature_norm2(self) -> float:
        """``|∇ν|² = |d_u|² + |d_v|²``."""
        return float(self.d_u @ self.d_u + self.d_v @ self.d_v)


def _weierstrass_connectors(w: complex, Fw: complex, dlogF: complex, e_u, e_v, nu, tag) -> ConnectorSet:
    q = 1 + abs(w) ** 2
    mod = abs(Fw)
    c_chi, s_chi = Fw.real / mod, Fw.imag / mod
    k = 4.0 / (mod * q * q)  # e^Φ / |r_,u|²
    d_u = k * (-c_chi * e_u + s_chi * e_v)
    d_v = k * (s_chi * e_u + c_chi * e_v)
    chi_u, chi_v = dlogF.imag, dlogF.real
    ru = 0.5 * mod * q
    c = ((chi_u - 2 * w.imag / q) * e_u + (chi_v + 2 * w.real / q) * e_v) / ru
    return ConnectorSet(c=c, d_u=d_u, d_v=d_v, frame_tag=tag, e_u=e_u, e_v=e_v, nu=nu)


def source_connectors(s: WeierstrassSurface, w: complex, F_prime=None) -> ConnectorSet:
    fr = frame_at(s, w, track_chi=False)
    Fw = s.F(fr.w)
    Fp = (F_prime or s.F.derivative())(fr.w)
    return _weierstrass_connectors(fr.w, Fw, Fp / Fw, fr.e_u, fr.e_v, fr.nu, "source")


def native_star_connectors(d: DeformationPair, w: complex) -> ConnectorSet:
    """``(c*_*, d*_u*, d*_v*)`` of the frame native to ``S*``, at ``h(w)``."""
    st = state_at(d, w)
    ws = st.w_star
    Fs = d.target.F(ws)
    G = d.Fstar_prime(ws) / Fs
    e_u, e_v = st.star_frame_native
    return _weierstrass_connectors(ws, Fs, G, e_u, e_v, st.nu_star, "starred_native")


def _h_data(d: DeformationPair, w: complex):
    hw = d.h(w)
    hp = d.h_prime(w)
    hpp = d.h_second(w)
    return hw, hp, hpp


def starred_connectors(d: DeformationPair, w: complex, state=None) -> ConnectorSet:
    """Connectors of the ``(u, v)``-parametrized frame ``(e*_u, e*_v, ν*)``."""
    st = state if state is not None else state_at(d, w)
    w = st.w
    hw, hp, hpp = _h_data(d, w)
    Fs = d.target.F(hw)
    mod = abs(Fs)
    C, S = Fs.real / mod, Fs.imag / mod
    qh = 1 + abs(hw) ** 2
    ahp = abs(hp)
    rs = 0.5 * mod * qh * ahp  # |r*_,u|
    k = mod / rs ** 2  # e^{Φ*} / |r*_,u|²
    huu, huv, hvu = hp.real, -hp.imag, hp.imag
    es_u, es_v = st.star_frame_uv
    d_u = k * (((huv ** 2 - huu ** 2) * C - 2 * huu * huv * S) * es_u
               + (2 * huu * hvu * C + (huu ** 2 - huv ** 2) * S) * es_v)
    d_v = k * ((2 * huu * hvu * C + (huu ** 2 - huv ** 2) * S) * es_u
               + ((huu ** 2 - huv ** 2) * C + 2 * huu * huv * S) * es_v)
    G = d.Fstar_prime(hw) / Fs * hp  # d/dw ln F*(h(w))
    chi_u, chi_v = G.imag, G.real
    hh = hw.conjugate() * hp
    L = hpp / hp
    # gradient of ln((1 + |h|²)|h'|)
    L_u = 2 * hh.real / qh + L.real
    L_v = -2 * hh.imag / qh - L.imag
    c = ((chi_u - L_v) * es_u + (chi_v + L_u) * es_v) / rs
    return ConnectorSet(c=c, d_u=d_u, d_v=d_v, frame_tag="starred_uv", e_u=es_u, e_v=es_v, nu=st.nu_star)


def starred_curvature_connectors_projected(d: DeformationPair, w: complex) -> tuple[np.ndarray, np.ndarray]:
    """``(d*_u, d*_v)`` obtained by projecting the native connectors on the
    ``(u, v)`` frame: ``d*_u = (e*_u*·e*_u) d*_u* + (e*_v*·e*_u) d*_v*``."""
    st = state_at(d, w)
    nat = native_star_connectors(d, w)
    es_u, es_v = st.star_frame_uv
    eu_n, ev_n = st.star_frame_native
    du = (eu_n @ es_u) * nat.d_u + (ev_n @ es_u) * nat.d_v
    dv = (eu_n @ es_v) * nat.d_u + (ev_n @ es_v) * nat.d_v
    return du, dv


def spin_correction(d: DeformationPair, w: complex) -> np.ndarray:
    """``c* - c*_*``: the ``|h'|``-gradient term,
    ``(1/|r*_,u|)(-(ln|h'|)_,v e*_u + (ln|h'|)_,u e*_v)``."""
    st = state_at(d, w)
    hw, hp, hpp = _h_data(d, st.w)
    rs = 0.5 * abs(d.target.F(hw)) * (1 + abs(hw) ** 2) * abs(hp)
    L = hpp / hp
    es_u, es_v = st.star_frame_uv
    return (L.imag * es_u + L.real * es_v) / rs


def reconstruct_frame_gradients(cs: ConnectorSet, frame=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(∇e_u, ∇e_v, ∇ν)`` assembled from the connector equations."""
    e_u, e_v, nu = frame if frame is not None else cs.frame()
    grad_eu = np.outer(e_v, cs.c) + np.outer(nu, cs.d_u)
    grad_ev = -np.outer(e_u, cs.c) + np.outer(nu, cs.d_v)
    grad_nu = -np.outer(e_u, cs.d_u) - np.outer(e_v, cs.d_v)
    return grad_eu, grad_ev, grad_nu


# ---------------------------------------------------------------------------
# finite-difference oracles


def _fd_surface_gradient(field, w: complex, step: float, t_u, t_v, metric: float) -> np.ndarray:
    """``∇f = f_,u ⊗ e_u/|r_,u| + f_,v ⊗ e_v/|r_,v|`` by central differences."""
    fu = (field(w + step) - field(w - step)) / (2 * step)
    fv = (field(w + 1j * step) - field(w - 1j * step)) / (2 * step)
    return (np.outer(fu, t_u) + np.outer(fv, t_v)) / metric


def fd_source_frame_gradients(s: WeierstrassSurface, w: complex, step: float | None = None):
    w = complex(w)
    if step is None:
        step = 1e-5 * max(1.0, abs(w))
    fr = frame_at(s, w, track_chi=False)

    def frame_vec(i):
        def f(z):
            g = frame_at(s, z, track_chi=False)
            return (g.e_u, g.e_v, g.nu)[i]
        return f

    return tuple(_fd_surface_gradient(frame_vec(i), w, step, fr.e_u, fr.e_v, fr.metric_factor) for i in range(3))


def fd_starred_frame_gradients(d: DeformationPair, w: complex, step: float | None = None):
    """FD gradients of ``(e*_u, e*_v, ν*)`` on ``S*`` parametrized by ``(u, v)``."""
    w = complex(w)
    if step is None:
        step = 1e-5 * max(1.0, abs(w))
    st = state_at(d, w)
    metric = st.stretch_ratio * st.frame.metric_factor  # |r*_,u|
    es_u, es_v = st.star_frame_uv

    def frame_vec(i):
        def f(z):
            g = state_at(d, z)
            return (g.star_frame_uv[0], g.star_frame_uv[1], g.nu_star)[i]
        return f

    return tuple(_fd_surface_gradient(frame_vec(i), w, step, es_u, es_v, metric) for i in range(3))


def connectors_from_gradients(grads, frame) -> ConnectorSet:
    """Read connectors back from frame gradients: ``c = (∇e_u)ᵀ e_v``,
    ``d_u = (∇e_u)ᵀ ν``, ``d_v = (∇e_v)ᵀ ν``."""
    grad_eu, grad_ev, _ = grads
    e_u, e_v, nu = frame
    return ConnectorSet(c=grad_eu.T @ e_v, d_u=grad_eu.T @ nu, d_v=grad_ev.T @ nu,
                        frame_tag="fd", e_u=e_u, e_v=e_v, nu=nu)
