"""Planar parameter domains and the piecewise paths used to integrate over them.

Domains are closed for membership purposes (a relative slack of ``BOUNDARY_SLACK``
is allowed) so that grids sampled on the boundary circles of an annulus stay
admissible.  Finite-difference stencils are checked with the same test, so a
stencil centred on the boundary is rejected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainViolation, InvalidParams, PathBlocked, SingularPoint

EXCLUSION_RADIUS = 1e-8
BOUNDARY_SLACK = 1e-12

DOMAIN_KINDS = ("annulus", "disk", "rectangle", "plane")


@dataclass(frozen=True)
class DomainSpec:
    """A planar domain with punctures.

    ``kind`` is one of ``annulus`` (params ``r_min, r_max``), ``disk``
    (``radius``), ``rectangle`` (``u_min, u_max, v_min, v_max``) or ``plane``
    (no params).  ``excluded`` holds ``(point, radius)`` pairs.
    """

    kind: str
    params: tuple[float, ...] = ()
    excluded: tuple[tuple[complex, float], ...] = ()

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise InvalidParams(f"unknown domain kind {self.kind!r}")
        expected = {"annulus": 2, "disk": 1, "rectangle": 4, "plane": 0}[self.kind]
        if len(self.params) != expected:
            raise InvalidParams(f"{self.kind} takes {expected} parameters, got {len(self.params)}")
        p = self.params
        if self.kind == "annulus" and not (0 < p[0] < p[1]):
            raise InvalidParams("annulus requires 0 < r_min < r_max")
        if self.kind == "disk" and not p[0] > 0:
            raise InvalidParams("disk radius must be positive")
        if self.kind == "rectangle" and not (p[0] < p[1] and p[2] < p[3]):
            raise InvalidParams("rectangle ranges must be increasing")
        for z, r in self.excluded:
            if not r > 0:
                raise InvalidParams("exclusion radii must be positive")
            if not cmath.isfinite(complex(z)):
                raise InvalidParams("excluded points must be finite")

    @classmethod
    def annulus(cls, r_min: float, r_max: float, excluded=()) -> "DomainSpec":
        return cls("annulus", (float(r_min), float(r_max)), tuple(excluded))

    @classmethod
    def disk(cls, radius: float, excluded=()) -> "DomainSpec":
        return cls("disk", (float(radius),), tuple(excluded))

    @classmethod
    def rectangle(cls, u_range, v_range, excluded=()) -> "DomainSpec":
        return cls("rectangle", (float(u_range[0]), float(u_range[1]),
                                 float(v_range[0]), float(v_range[1])), tuple(excluded))

    @classmethod
    def plane(cls, excluded=()) -> "DomainSpec":
        return cls("plane", (), tuple(excluded))

    def with_exclusions(self, points: Iterable[complex], radius: float = EXCLUSION_RADIUS) -> "DomainSpec":
        extra = tuple((complex(z), float(radius)) for z in points)
        return DomainSpec(self.kind, self.params, self.excluded + extra)

    def contains(self, w: complex) -> bool:
        """Geometric membership in the closed domain (exclusions ignored)."""
        w = complex(w)
        if not cmath.isfinite(w):
            return False
        p = self.params
        if self.kind == "annulus":
            r = abs(w)
            return p[0] * (1 - BOUNDARY_SLACK) <= r <= p[1] * (1 + BOUNDARY_SLACK)
        if self.kind == "disk":
            return abs(w) <= p[0] * (1 + BOUNDARY_SLACK)
        if self.kind == "rectangle":
            su = BOUNDARY_SLACK * max(1.0, abs(p[0]), abs(p[1]))
            sv = BOUNDARY_SLACK * max(1.0, abs(p[2]), abs(p[3]))
            return p[0] - su <= w.real <= p[1] + su and p[2] - sv <= w.imag <= p[3] + sv
        return True

    def is_excluded(self, w: complex) -> bool:
        return any(abs(complex(w) - z) < r for z, r in self.excluded)

    def check(self, w: complex) -> complex:
        """Return ``w`` as a complex number or raise the appropriate error."""
        w = complex(w)
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise DomainViolation(f"non-finite point {w!r}")
        if not self.contains(w):
            raise DomainViolation(f"{w!r} outside {self.kind} domain {self.params}")
        if self.is_excluded(w):
            raise SingularPoint(f"{w!r} within an excluded neighbourhood")
        return w

    def bounding_box(self) -> tuple[float, float, float, float]:
        p = self.params
        if self.kind == "annulus":
            return (-p[1], p[1], -p[1], p[1])
        if self.kind == "disk":
            return (-p[0], p[0], -p[0], p[0])
        if self.kind == "rectangle":
            return p
        raise InvalidParams("the plane has no bounding box")

    def __str__(self) -> str:
        body = ",".join(repr(x) for x in self.params)
        text = f"{self.kind}({body})"
        for z, r in self.excluded:
            text += f" exclude({z.real!r},{z.imag!r},{r!r})"
        return text


# ---------------------------------------------------------------------------
# Paths


@dataclass(frozen=True)
class Line:
    start: complex
    end: complex

    def point(self, t: float) -> complex:
        return self.start + (self.end - self.start) * t

    def tangent(self, t: float) -> complex:
        return self.end - self.start

    def distance_to(self, z: complex) -> float:
        d = self.end - self.start
        n2 = abs(d) ** 2
        if n2 == 0:  # also catches underflow for sub-1e-154 segments
            return abs(z - self.start)
        t = ((z - self.start) * d.conjugate()).real / n2
        t = min(1.0, max(0.0, t))
        return abs(z - self.point(t))

    def radius_range(self) -> tuple[float, float]:
        return self.distance_to(0j), max(abs(self.start), abs(self.end))


@dataclass(frozen=True)
class Arc:
    """Circular arc ``center + radius * exp(i theta)`` for theta in [theta0, theta1]."""

    center: complex
    radius: float
    theta0: float
    theta1: float

    @property
    def start(self) -> complex:
        return self.point(0.0)

    @property
    def end(self) -> complex:
        return self.point(1.0)

    def point(self, t: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return self.center + self.radius * cmath.exp(1j * th)

    def tangent(self, t: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return 1j * self.radius * (self.theta1 - self.theta0) * cmath.exp(1j * th)

    def distance_to(self, z: complex) -> float:
        rel = z - self.center
        lo, hi = sorted((self.theta0, self.theta1))
        if rel != 0:
            phi = cmath.phase(rel)
            # bring phi into [lo, lo + 2pi)
            phi = lo + (phi - lo) % (2 * math.pi)
            if phi <= hi:
                return abs(abs(rel) - self.radius)
        return min(abs(z - self.start), abs(z - self.end))

    def radius_range(self) -> tuple[float, float]:
        if self.center == 0:
            return self.radius, self.radius
        radii = [abs(self.point(t)) for t in np.linspace(0.0, 1.0, 129)]
        return min(radii), max(radii)


Segment = Line | Arc
Path = tuple


def path_start(path: Sequence[Segment]) -> complex:
    return path[0].start


def path_end(path: Sequence[Segment]) -> complex:
    return path[-1].end


def staircase(start: complex, end: complex, horizontal_first: bool = True) -> tuple[Line, ...]:
    """Axis-parallel two-segment path; degenerate segments are dropped."""
    start, end = complex(start), complex(end)
    corner = complex(end.real, start.imag) if horizontal_first else complex(start.real, end.imag)
    segs = tuple(s for s in (Line(start, corner), Line(corner, end)) if s.start != s.end)
    return segs or (Line(start, end),)


def polar_path(start: complex, end: complex, dtheta: float | None = None) -> tuple[Segment, ...]:
    """Radial segment at the start angle, then an arc about the origin.

    ``dtheta`` fixes the signed angular sweep (it may exceed 2 pi); by default
    the principal angle difference is used.
    """
    start, end = complex(start), complex(end)
    if start == 0 or end == 0:
        raise PathBlocked("polar paths cannot start or end at the origin")
    th0 = cmath.phase(start)
    if dtheta is None:
        dtheta = cmath.phase(end / start)
    corner = abs(end) * cmath.exp(1j * th0)
    segs: list[Segment] = []
    if corner != start:
        segs.append(Line(start, corner))
    if dtheta != 0:
        segs.append(Arc(0j, abs(end), th0, th0 + dtheta))
    return tuple(segs) or (Line(start, end),)


def segment_admissible(seg: Segment, domain: DomainSpec, avoid: Iterable[tuple[complex, float]] = ()) -> bool:
    for z, r in tuple(domain.excluded) + tuple(avoid):
        if seg.distance_to(z) < r:
            return False
    if domain.kind == "plane":
        return True
    if domain.kind in ("annulus", "disk"):
        rmin, rmax = seg.radius_range()
        if domain.kind == "annulus":
            lo, hi = domain.params
            return lo * (1 - BOUNDARY_SLACK) <= rmin and rmax <= hi * (1 + BOUNDARY_SLACK)
        return rmax <= domain.params[0] * (1 + BOUNDARY_SLACK)
    # rectangle: convex, so straight lines only need their endpoints
    if isinstance(seg, Line):
        return domain.contains(seg.start) and domain.contains(seg.end)
    return all(domain.contains(seg.point(t)) for t in np.linspace(0.0, 1.0, 65))


def path_admissible(path: Sequence[Segment], domain: DomainSpec, avoid=()) -> bool:
    avoid = tuple(avoid)
    return all(segment_admissible(s, domain, avoid) for s in path)


def default_path(domain: DomainSpec, start: complex, end: complex, avoid=()) -> tuple[Segment, ...]:
    """First admissible path among: staircase (horizontal first), staircase
    (vertical first), for annuli the radial-then-angular path (both ways
    round), and finally two-segment detours through an offset midpoint."""
    candidates = [staircase(start, end, True), staircase(start, end, False)]
    if domain.kind == "annulus" and start != 0 and end != 0:
        candidates.append(polar_path(start, end))
        candidates.append(polar_path(start, end, cmath.phase(end / start) - math.copysign(2 * math.pi, cmath.phase(end / start) or 1.0)))
    # detours through an offset midpoint, for straight paths hitting a singularity
    mid, half = 0.5 * (start + end), 0.5 * (end - start)
    for side in (1j, -1j):
        corner = mid + side * half
        if corner not in (start, end):
            candidates.append((Line(start, corner), Line(corner, end)))
    for path in candidates:
        if path_admissible(path, domain, avoid):
            return path
    raise PathBlocked(f"no admissible path from {start!r} to {end!r} in {domain}")
