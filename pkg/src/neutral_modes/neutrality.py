"""Neutral modes: residuals, classification and constructors of neutral families.

A conformal map ``h`` is *neutral* when ``|h'| = (1+|h|²)/(1+|w|²)``, i.e.
when it preserves the spherical (stereographic) arc length.  Among Möbius
maps these are exactly the rotations ``(a w - c̄)/(c w + ā)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence


from .deformation import DeformationPair, lattice_points
from .domain import EXCLUSION_RADIUS, DomainSpec
from .energetics import _point_data, drilling_defects
from .errors import (DegenerateMoebius, HierarchyViolation, InvalidParams, NotHolomorphic,
                     NotNeutral, SingularPoint)
from .holomorphic import (FD_TOL, HolomorphicFn, Identity, Moebius, cauchy_riemann_residual,
                          compose, const, identity, moebius, mul, power)
from .weierstrass import WeierstrassSurface

TOL_EXACT = 1e-9
TOL_FD = 1e-6
HARMONIC_TOL = 1e-4
PROBE_MARGIN = 0.05

CLASSES = ("isometry", "drilling_neutral", "bending_neutral", "generic")


@dataclass(frozen=True)
class NeutralityReport:
    bending_residual: float
    drilling_residual: float
    stretching_residual: float
    classification: str
    tol: float
    n_probes: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class NeutralFamilyParams:
    lam: float = 1.0
    beta: float = 0.0
    alpha0: float = 0.0
    kappa: float = 1.0
    moebius: tuple[complex, complex, complex, complex] = (1, 0, 0, 1)

    def __post_init__(self):
        if not self.lam > 0:
            raise InvalidParams("lambda must be positive")
        if self.kappa == 0:
            raise InvalidParams("kappa must be nonzero")
        a, b, c, d = (complex(x) for x in self.moebius)
        if a * d - b * c == 0:
            raise DegenerateMoebius("ad - bc = 0")


# ---------------------------------------------------------------------------
# residuals


def neutral_defect(h: HolomorphicFn, w: complex, h_prime: HolomorphicFn | None = None) -> float:
    """``|h'(w)| - (1+|h(w)|²)/(1+|w|²)`` (signed)."""
    hp = (h_prime or h.derivative())(w)
    return abs(hp) - (1 + abs(h(w)) ** 2) / (1 + abs(w) ** 2)


def bending_neutral_residual(h: HolomorphicFn, probes: Iterable[complex]) -> float:
    hp = h.derivative()
    return max((abs(neutral_defect(h, complex(w), hp)) for w in probes), default=0.0)


def drilling_neutral_residual(d: DeformationPair, probes: Iterable[complex]) -> float:
    return max((math.hypot(*drilling_defects(d, w)) for w in probes), default=0.0)


def stretching_residual(d: DeformationPair, probes: Iterable[complex]) -> float:
    return max((abs(_point_data(d, w).ratio - 1.0) for w in probes), default=0.0)


def default_probes(d: DeformationPair, n: int = 12, margin: float = PROBE_MARGIN) -> list[complex]:
    """Interior lattice of the source domain kept ``margin`` away from the
    singularities of ``h``, ``F`` and ``F*∘h``."""
    bad = list(d.h.poles()) + list(d.source.F.poles()) + list(d.source.F.zeros())
    bad += [z for z, _ in d.source.domain.excluded]
    out = []
    for w in lattice_points(d.source.domain, n):
        if any(abs(w - z) < margin for z in bad):
            continue
        try:
            hw = d.h(w)
            if not d.target.domain.contains(hw) or d.target.domain.is_excluded(hw):
                continue
            if d.target.F(hw) == 0:
                continue
        except SingularPoint:
            continue
        out.append(w)
    return out


def classify(d: DeformationPair, probes: Sequence[complex] | None = None, tol: float = TOL_EXACT) -> NeutralityReport:
    """Sup-norm residuals over ``probes`` and the resulting class.

    Raises :class:`HierarchyViolation` when a stronger neutrality holds while
    a weaker one fails by more than ``10 * tol``.
    """
    if probes is None:
        probes = default_probes(d)
    probes = list(probes)
    rb = bending_neutral_residual(d.h, probes)
    rd = drilling_neutral_residual(d, probes)
    rs = stretching_residual(d, probes)
    if rs <= tol:
        if rd > 10 * tol or rb > 10 * tol:
            raise HierarchyViolation(f"isometric yet drilling={rd:.3e}, bending={rb:.3e}")
        label = "isometry"
    elif rd <= tol:
        if rb > 10 * tol:
            raise HierarchyViolation(f"drilling neutral yet bending={rb:.3e}")
        label = "drilling_neutral"
    elif rb <= tol:
        label = "bending_neutral"
    else:
        label = "generic"
    return NeutralityReport(rb, rd, rs, label, tol, len(probes))


# ---------------------------------------------------------------------------
# constructors


def _as_moebius(h: HolomorphicFn) -> Moebius:
    if isinstance(h, Moebius):
        return h
    if isinstance(h, Identity):
        return moebius(1, 0, 0, 1)
    raise InvalidParams("constructors need h as a Möbius map (identity, scaling or general)")


def _target_domain(domain: DomainSpec, h: Moebius) -> DomainSpec:
    a, b, c, d = h.coefficients
    if c == 0 and b == 0 and domain.kind in ("annulus", "disk"):
        k = abs(a / d)
        if domain.kind == "annulus":
            return DomainSpec.annulus(k * domain.params[0], k * domain.params[1])
        return DomainSpec.disk(k * domain.params[0])
    if h.is_close(moebius(1, 0, 0, 1)):
        return DomainSpec(domain.kind, domain.params)
    return DomainSpec.plane()


BASEPOINT_CANDIDATES = (1, -1, 1j, -1j, cmath.exp(0.25j * math.pi), cmath.exp(1.25j * math.pi))


def pick_basepoint(domain: DomainSpec, avoid: Sequence[complex], basepoint=None) -> complex:
    if basepoint is not None:
        return complex(basepoint)
    cands = list(BASEPOINT_CANDIDATES)
    if domain.kind != "annulus":
        cands = [0j] + cands
    for z in cands:
        z = complex(z)
        if domain.contains(z) and not domain.is_excluded(z) and all(abs(z - p) > 0.1 for p in avoid):
            return z
    raise InvalidParams("no usable basepoint among the default candidates")


def build_pair(F: HolomorphicFn, domain: DomainSpec, h: HolomorphicFn, factor: HolomorphicFn,
               basepoint=None, exclusion: float = EXCLUSION_RADIUS) -> DeformationPair:
    """Pair with ``F*(h(w)) = factor(w) F(w) / h'(w)²`` for a Möbius ``h``.

    ``F*`` is assembled on the target variable through ``h⁻¹``:
    ``F* = (factor∘h⁻¹)(F∘h⁻¹)((h⁻¹)')²``.
    """
    hm = _as_moebius(h)
    hinv = hm.inverse()
    h_used: HolomorphicFn = identity() if hm.is_close(moebius(1, 0, 0, 1)) else hm
    inv_used: HolomorphicFn = identity() if isinstance(h_used, Identity) else hinv
    Fstar = mul(mul(compose(factor, inv_used), compose(F, inv_used)), power(2, inv_used.derivative()))
    src_domain = domain.with_exclusions(h_used.poles(), exclusion) if h_used.poles() else domain
    bp = pick_basepoint(src_domain, tuple(h_used.poles()) + F.poles() + F.zeros(), basepoint)
    source = WeierstrassSurface(F, src_domain, bp)
    tgt_domain = _target_domain(domain, hm)
    if tgt_domain.kind == "plane":
        tgt_domain = tgt_domain.with_exclusions(Fstar.poles(), exclusion)
    target = WeierstrassSurface(Fstar, tgt_domain, h_used(bp))
    return DeformationPair(source, target, h_used)


def _check_neutral(h: HolomorphicFn, domain: DomainSpec, tol: float) -> None:
    probes = [w for w in lattice_points(domain, 10)
              if all(abs(w - p) > PROBE_MARGIN for p in h.poles())]
    res = bending_neutral_residual(h, probes)
    if res > tol:
        raise NotNeutral(f"h violates the neutrality equation (residual {res:.3e})")


def make_bonnet(F: HolomorphicFn, alpha0: float, domain: DomainSpec, h: HolomorphicFn | None = None,
                basepoint=None, tol: float = TOL_EXACT) -> DeformationPair:
    """``F* = e^{iα₀} F / h'²`` with a neutral ``h`` (identity by default)."""
    return make_drilling_neutral(F, h, 1.0, alpha0, domain, basepoint=basepoint, tol=tol)


def make_drilling_neutral(F: HolomorphicFn, h_neutral: HolomorphicFn | None, lam: float, alpha0: float,
                          domain: DomainSpec, basepoint=None, tol: float = TOL_EXACT) -> DeformationPair:
    """``F* = λ e^{iα₀} F / h'²`` with constant ``λ > 0`` and neutral ``h``."""
    if not lam > 0:
        raise InvalidParams("lambda must be positive")
    h = h_neutral if h_neutral is not None else identity()
    _check_neutral(h, domain, tol)
    return build_pair(F, domain, h, const(lam * cmath.exp(1j * alpha0)), basepoint)


def harmonic_residual(g: HolomorphicFn, w: complex, step: float = 1e-3) -> float:
    """FD Laplacian of ``β = arg g`` (branch-free: uses phase ratios)."""
    g0 = g(w)
    total = 0.0
    for dz in (step, -step, 1j * step, -1j * step):
        total += cmath.phase(g(w + dz) / g0)
    return abs(total) / step ** 2


def make_bending_neutral(F: HolomorphicFn, h_neutral: HolomorphicFn | None, domain: DomainSpec,
                         g: HolomorphicFn | None = None, lam: float = 1.0, beta: float = 0.0,
                         basepoint=None, tol: float = TOL_EXACT) -> DeformationPair:
    """``F* = λ e^{iβ} F / h'²``.

    The fields come from a holomorphic ``g`` via ``λ = |g|``, ``β = arg g``
    (then ``λ e^{iβ} = g``); without ``g`` the constants ``lam``, ``beta``
    are used.
    """
    h = h_neutral if h_neutral is not None else identity()
    _check_neutral(h, domain, tol)
    if g is None:
        if not lam > 0:
            raise InvalidParams("lambda must be positive")
        g = const(lam * cmath.exp(1j * beta))
    pair = build_pair(F, domain, h, g, basepoint)
    probes = default_probes(pair, n=8)
    for w in probes:
        try:
            if g(w) == 0:
                raise InvalidParams(f"lambda vanishes at {w!r}")
            lap = harmonic_residual(g, w)
        except SingularPoint:
            continue
        if lap > HARMONIC_TOL:
            raise InvalidParams(f"beta is not harmonic near {w!r} (laplacian {lap:.3e})")
        step = 1e-5 * max(1.0, abs(pair.h(w)))
        if cauchy_riemann_residual(pair.target.F, pair.h(w), step) > FD_TOL * max(1.0, abs(pair.target.F(pair.h(w)))):
            raise NotHolomorphic(f"assembled F* fails the Cauchy-Riemann check near {w!r}")
    return pair


def make_goursat(F: HolomorphicFn, domain: DomainSpec, moebius_coeffs=None, kappa: float | None = None,
                 basepoint=None) -> DeformationPair:
    """Goursat transformation ``F*(h(w)) = F(w)/h'(w)²``; ``kappa`` selects
    ``h(w) = κ w``."""
    if (moebius_coeffs is None) == (kappa is None):
        raise InvalidParams("give exactly one of moebius_coeffs and kappa")
    if kappa is not None:
        if kappa == 0:
            raise InvalidParams("kappa must be nonzero")
        h = moebius(kappa, 0, 0, 1)
    else:
        h = moebius(*moebius_coeffs)
    return build_pair(F, domain, h, const(1.0), basepoint)


# ---------------------------------------------------------------------------
# Möbius characterisation


@dataclass(frozen=True)
class AreaCheck:
    preserving: bool
    coefficients: tuple[complex, complex, complex, complex]  # scaled to ad - bc = 1


def area_preserving_moebius_check(a, b, c, d, tol: float = 1e-12) -> AreaCheck:
    """After scaling to ``ad - bc = 1``, true iff ``d = ā`` and ``b = -c̄``."""
    a, b, c, d = (complex(x) for x in (a, b, c, d))
    det = a * d - b * c
    scale_ = max(abs(a), abs(b), abs(c), abs(d))
    if scale_ == 0 or abs(det) <= 1e-14 * scale_ ** 2:
        raise DegenerateMoebius("ad - bc = 0")
    k = 1.0 / cmath.sqrt(det)
    a, b, c, d = a * k, b * k, c * k, d * k
    # the square root leaves an overall sign; fix it so the first nonzero entry has Re > 0
    lead = next(x for x in (a, b, c, d) if abs(x) > 0)
    if lead.real < 0 or (lead.real == 0 and lead.imag < 0):
        a, b, c, d = -a, -b, -c, -d
    ok = abs(d - a.conjugate()) <= tol and abs(b + c.conjugate()) <= tol
    return AreaCheck(ok, (a, b, c, d))


def spherical_arc_ratio(h: HolomorphicFn, w: complex, dw: complex) -> float:
    """Ratio of stereographic arc elements ``(2|h'||dw|/(1+|h|²)) / (2|dw|/(1+|w|²))``."""
    if dw == 0:
        raise ValueError("dw must be nonzero")
    w = complex(w)
    ds_star = 2 * abs(h.derivative()(w)) * abs(dw) / (1 + abs(h(w)) ** 2)
    ds = 2 * abs(dw) / (1 + abs(w) ** 2)
    return ds_star / ds
