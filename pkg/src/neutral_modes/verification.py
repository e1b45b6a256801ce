"""Cross-route and finite-difference verification suites.

Each suite returns a :class:`SuiteResult` with the largest normalized
deviation found; a suite passes when that deviation is at most its
tolerance.  Probe sets are quasi-random (scrambling off) and therefore
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .connectors import (_fd_surface_gradient, connectors_from_gradients, fd_source_frame_gradients, fd_starred_frame_gradients,
                         source_connectors, starred_connectors)
from .corpus import ANNULUS, BOUR1, ENNEPER, entries
from .deformation import DeformationPair
from .domain import DomainSpec
from .energetics import bending_density, drilling_density, third_rank_oracle
from .errors import HierarchyViolation
from .holomorphic import parse
from .neutrality import PROBE_MARGIN, classify
from .weierstrass import WeierstrassSurface, curvature_at, frame_at, weierstrass_integrand

ROUTE_TOL = 1e-8
ORACLE_TOL = 1e-4
GEOMETRY_TOL = 1e-6
CONNECTOR_TOL = 1e-6
HIERARCHY_TOL = 1e-8


@dataclass
class SuiteResult:
    name: str
    max_deviation: float
    tol: float
    n_checks: int
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def as_dict(self) -> dict:
        return {"name": self.name, "max_deviation": self.max_deviation, "tol": self.tol,
                "n_checks": self.n_checks, "passed": self.passed, "details": self.details}


def annulus_probes(domain: DomainSpec, n: int, shrink: float = 0.02, seed: int = 0) -> list[complex]:
    """``n`` Halton points in ``(log ρ, θ)``, kept slightly inside the annulus."""
    lo, hi = domain.params
    pts = qmc.Halton(d=2, scramble=False, seed=seed).random(n + 1)[1:]
    a, b = math.log(lo) + shrink, math.log(hi) - shrink
    return [complex(math.exp(a + (b - a) * x) * math.cos(2 * math.pi * y),
                    math.exp(a + (b - a) * x) * math.sin(2 * math.pi * y)) for x, y in pts]


def pair_probes(d: DeformationPair, n: int) -> list[complex]:
    bad = list(d.h.poles()) + list(d.source.F.poles())
    out, k = [], 0
    while len(out) < n:
        for w in annulus_probes(d.source.domain, 2 * n, seed=k):
            if all(abs(w - z) > PROBE_MARGIN for z in bad) and len(out) < n:
                out.append(w)
        k += 1
    return out


# ---------------------------------------------------------------------------
# suites


def hierarchy_suite(tol: float = HIERARCHY_TOL) -> SuiteResult:
    """Classify every corpus pair; a wrong class or a hierarchy violation
    counts as deviation ``inf``."""
    worst, details = 0.0, {}
    for e in entries():
        try:
            rep = classify(e.build(), tol=tol)
            got = rep.classification
        except HierarchyViolation as exc:
            got = f"violation: {exc}"
        details[e.name] = got
        if got != e.expected:
            worst = math.inf
    return SuiteResult("hierarchy", worst, 0.0, len(entries()), details)


def route_suite(n_probes: int = 50, route_tol: float = ROUTE_TOL, oracle_tol: float = ORACLE_TOL) -> list[SuiteResult]:
    """Connector route against the closed forms (relative, floor 1e-4 of
    the density scale) and the third-rank oracle against the closed forms."""
    conn, orc = 0.0, 0.0
    count = 0
    for e in entries():
        d = e.build()
        for w in pair_probes(d, n_probes):
            wd, wb = drilling_density(d, w), bending_density(d, w)
            cd, cb = drilling_density(d, w, "connector"), bending_density(d, w, "connector")
            conn = max(conn, abs(cd - wd) / (abs(wd) + 1e-4), abs(cb - wb) / (abs(wb) + 1e-4))
            o = third_rank_oracle(d, w)
            orc = max(orc, abs(o.w_d - wd) / (abs(wd) + 1e-4), abs(o.w_b - wb) / (abs(wb) + 1e-4))
            count += 1
    return [SuiteResult("route_connector", conn, route_tol, count),
            SuiteResult("route_third_rank_oracle", orc, oracle_tol, count)]


GEOMETRY_SURFACES = {"enneper": ENNEPER, "bour1": BOUR1, "bour3": "id"}


def geometry_deviation(s: WeierstrassSurface, w: complex, step: float = 1e-5) -> dict:
    """Metric and curvature invariants at ``w``.

    ``r_,u = Re φ`` and ``r_,v = -Im φ`` come straight from the integrand;
    the curvature tensor is compared with central differences of ``ν``.
    """
    phi = weierstrass_integrand(s.F, w)
    ru, rv = phi.real, -phi.imag
    nu_ = np.linalg.norm(ru)
    fr = frame_at(s, w, track_chi=False)
    tensor = curvature_at(s, w).tensor
    fd = _fd_surface_gradient(lambda z: frame_at(s, z, track_chi=False).nu, w, step * max(1.0, abs(w)),
                              fr.e_u, fr.e_v, fr.metric_factor)
    scale = max(1.0, float(np.abs(tensor).max()))
    return {
        "isothermal": abs(nu_ - np.linalg.norm(rv)) / nu_,
        "orthogonal": abs(ru @ rv) / nu_ ** 2,
        "frame": float(np.abs(ru / fr.metric_factor - fr.e_u).max()),
        "trace": abs(np.trace(tensor)) / scale,
        "curvature_fd": float(np.abs(fd - tensor).max()) / scale,
    }


def geometry_suite(n_probes: int = 1000, tol: float = GEOMETRY_TOL) -> SuiteResult:
    worst, details = 0.0, {}
    for name, expr in GEOMETRY_SURFACES.items():
        s = WeierstrassSurface(parse(expr), ANNULUS, 1.0)
        m = {}
        for w in annulus_probes(ANNULUS, n_probes):
            for k, v in geometry_deviation(s, w).items():
                m[k] = max(m.get(k, 0.0), v)
        details[name] = m
        worst = max(worst, max(m.values()))
    return SuiteResult("geometry", worst, tol, n_probes * len(GEOMETRY_SURFACES), details)


def _connector_dev(a, b) -> float:
    scale = max(1.0, *(float(np.abs(x).max()) for x in (a.c, a.d_u, a.d_v)))
    return max(float(np.abs(x - y).max()) for x, y in ((a.c, b.c), (a.d_u, b.d_u), (a.d_v, b.d_v))) / scale


def connector_suite(n_probes: int = 20, tol: float = CONNECTOR_TOL) -> SuiteResult:
    """Connectors of both frames against FD frame gradients."""
    worst, count = 0.0, 0
    for e in entries():
        d = e.build()
        for w in pair_probes(d, n_probes):
            src = source_connectors(d.source, w)
            fd_src = connectors_from_gradients(fd_source_frame_gradients(d.source, w), src.frame())
            star = starred_connectors(d, w)
            fd_star = connectors_from_gradients(fd_starred_frame_gradients(d, w), star.frame())
            worst = max(worst, _connector_dev(src, fd_src), _connector_dev(star, fd_star))
            count += 2
    return SuiteResult("connectors_fd", worst, tol, count)


def run_all(tol_scale: float = 1.0, quick: bool = False) -> list[SuiteResult]:
    """All suites; ``tol_scale`` multiplies every tolerance."""
    n_route, n_geo, n_conn = (10, 100, 5) if quick else (50, 1000, 20)
    out = [hierarchy_suite()]
    out += route_suite(n_route, ROUTE_TOL * tol_scale, ORACLE_TOL * tol_scale)
    out.append(geometry_suite(n_geo, GEOMETRY_TOL * tol_scale))
    out.append(connector_suite(n_conn, CONNECTOR_TOL * tol_scale))
    return out
