"""Sampling, tessellation and mesh export (OBJ + CSV sidecar, ASCII PLY).

Annuli are sampled on a ``(log ρ, θ)`` grid; other domains on a ``(u, v)``
grid over their bounding box.  Positions are accumulated segment by segment
along the grid lines (radially along the first angle, then angularly along
each ring), so a θ-range beyond 2π walks onto further sheets of multivalued
surfaces.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .deformation import DeformationPair, _integrate_pulled, state_at, target_position_at
from .domain import Arc, DomainSpec, Line, segment_admissible
from .energetics import total_density
from .errors import InvalidParams, IoFailure, NeutralModesError, PathBlocked
from .holomorphic import compose
from .weierstrass import WeierstrassSurface, frame_at, gaussian_curvature, integrate_segment, position_at

FORMATS = ("obj", "ply")
FIELD_NAMES = ("K", "Ws", "Wd", "Wb")


@dataclass(frozen=True)
class Vertex:
    grid_index: int
    w: complex
    position: np.ndarray
    normal: np.ndarray
    K: float
    W_s: float = 0.0
    W_d: float = 0.0
    W_b: float = 0.0

    def fields(self) -> tuple[float, float, float, float]:
        return (self.K, self.W_s, self.W_d, self.W_b)


@dataclass
class SampledSurface:
    vertices: list[Vertex]
    faces: list[tuple[int, ...]]  # indices into ``vertices``
    grid_shape: tuple[int, int]
    excluded: list[int] = field(default_factory=list)  # grid indices without a vertex
    source: str = "surface"

    def field_array(self, name: str) -> np.ndarray:
        attr = {"K": "K", "Ws": "W_s", "Wd": "W_d", "Wb": "W_b"}[name]
        return np.array([getattr(v, attr) for v in self.vertices])

    def positions(self) -> np.ndarray:
        return np.array([v.position for v in self.vertices]).reshape(-1, 3)


def grid_points(domain: DomainSpec, grid: tuple[int, int], theta0: float = 0.0,
                theta_range: float = 2 * math.pi, extent=None) -> np.ndarray:
    """Complex sample points of shape ``grid``.

    For annuli rows are radii (log-spaced) and columns are angles covering
    the closed interval ``[θ₀, θ₀ + θ_range]``.  ``extent`` overrides the
    bounding box (required for the plane).
    """
    n, m = grid
    if n < 2 or m < 2:
        raise InvalidParams("grid dimensions must be at least 2")
    if domain.kind == "annulus":
        lo, hi = domain.params
        rho = np.exp(np.linspace(math.log(lo), math.log(hi), n))
        theta = theta0 + np.linspace(0.0, theta_range, m)
        return rho[:, None] * np.exp(1j * theta)[None, :]
    u0, u1, v0, v1 = extent if extent is not None else domain.bounding_box()
    u = np.linspace(u0, u1, n)
    v = np.linspace(v0, v1, m)
    return u[:, None] + 1j * v[None, :]


def _grid_segment(domain: DomainSpec, a: complex, b: complex, along_ring: bool, dt: float | None = None):
    """Segment from ``a`` to ``b``; along a ring ``dt`` is the signed angle
    swept, which may exceed π (the endpoints alone cannot tell sheets apart)."""
    if along_ring:
        r = abs(a)
        t0 = math.atan2(a.imag, a.real)
        if dt is None:
            dt = math.atan2((b / a).imag, (b / a).real)
        return Arc(0j, r, t0, t0 + dt)
    return Line(a, b)


class _Integrator:
    """Position increments and anchors for a surface or for the target of a pair."""

    def __init__(self, obj):
        self.obj = obj
        if isinstance(obj, DeformationPair):
            self.pulled = compose(obj.target.F, obj.h) * obj.h_prime
            self.domain = obj.source.domain
            self.avoid = obj.source.avoid()
        else:
            self.domain = obj.domain
            self.avoid = obj.avoid()

    def anchor(self, w: complex) -> np.ndarray:
        if isinstance(self.obj, DeformationPair):
            return target_position_at(self.obj, w)
        return position_at(self.obj, w)

    def increment(self, seg) -> np.ndarray:
        if not segment_admissible(seg, self.domain, self.avoid):
            raise PathBlocked("grid segment leaves the domain")
        if isinstance(self.obj, DeformationPair):
            return _integrate_pulled(self.pulled, self.obj.h, [seg])
        return integrate_segment(self.obj.F, seg)


def _vertex(obj, k: int, w: complex, pos: np.ndarray, route: str) -> Vertex:
    if isinstance(obj, DeformationPair):
        st = state_at(obj, w)
        en = total_density(obj, w, route=route)
        K = gaussian_curvature(obj.target, st.w_star)
        return Vertex(k, w, pos, st.nu_star, K, en.w_s, en.w_d, en.w_b)
    fr = frame_at(obj, w, track_chi=False)
    return Vertex(k, w, pos, fr.nu, gaussian_curvature(obj, w))


def sample(obj: WeierstrassSurface | DeformationPair, domain: DomainSpec | None = None,
           grid: tuple[int, int] = (16, 32), theta0: float = 0.0, theta_range: float = 2 * math.pi,
           extent=None, route: str = "closed_form", positions: bool = True) -> SampledSurface:
    """Evaluate geometry (and, for a pair, the energy densities) on a grid.

    A pair is drawn as its deformed (target) surface; the fields are attached
    at the source parameter.  Vertices where evaluation fails are dropped and
    listed in ``excluded``.
    """
    is_pair = isinstance(obj, DeformationPair)
    own = obj.source.domain if is_pair else obj.domain
    domain = domain if domain is not None else own
    pts = grid_points(domain, grid, theta0, theta_range, extent)
    n, m = grid
    ring = domain.kind == "annulus"
    dtheta = theta_range / (m - 1)
    integ = _Integrator(obj)
    pos = np.full((n, m, 3), np.nan)

    def ok(w):
        return own.contains(w) and not own.is_excluded(w) and domain.contains(w)

    def place(i, j, prev):
        """Position at (i, j) from the neighbour ``prev`` or a fresh anchor."""
        w = complex(pts[i, j])
        if prev is not None and not np.isnan(pos[prev][0]):
            try:
                seg = _grid_segment(domain, complex(pts[prev]), w, ring and prev[0] == i, dtheta)
                pos[i, j] = pos[prev] + integ.increment(seg)
                return
            except NeutralModesError:
                pass
        pos[i, j] = integ.anchor(w)

    if positions:
        for i in range(n):
            for j in range(m):
                if not ok(complex(pts[i, j])):
                    continue
                prev = (i - 1, 0) if j == 0 and i > 0 else ((i, j - 1) if j > 0 else None)
                try:
                    place(i, j, prev)
                except NeutralModesError:
                    pos[i, j] = np.nan
    else:
        pos[:] = 0.0

    vertices: list[Vertex] = []
    slot = -np.ones((n, m), dtype=int)
    excluded = []
    for i in range(n):
        for j in range(m):
            k = i * m + j
            w = complex(pts[i, j])
            if not ok(w) or np.isnan(pos[i, j, 0]):
                excluded.append(k)
                continue
            try:
                v = _vertex(obj, k, w, pos[i, j].copy(), route)
            except (NeutralModesError, ZeroDivisionError, OverflowError):
                excluded.append(k)
                continue
            slot[i, j] = len(vertices)
            vertices.append(v)
    faces = []
    for i in range(n - 1):
        for j in range(m - 1):
            quad = (slot[i, j], slot[i + 1, j], slot[i + 1, j + 1], slot[i, j + 1])
            if min(quad) >= 0:
                faces.append(tuple(int(x) for x in quad))
    return SampledSurface(vertices, faces, (n, m), excluded, "pair" if is_pair else "surface")


# ---------------------------------------------------------------------------
# export


def fmt(x: float) -> str:
    """At most 9 significant digits; ``-0`` printed as ``0``."""
    s = format(float(x), ".9g")
    return "0" if s == "-0" else s


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def export(s: SampledSurface, fmt_name: str, path) -> list[Path]:
    """Write ``s`` as OBJ (plus ``<stem>.csv`` sidecar with the fields) or as
    ASCII PLY with the fields as vertex properties.  Returns written paths."""
    path = Path(path)
    fmt_name = fmt_name.lower()
    if fmt_name == "obj":
        lines = [f"# vertices {len(s.vertices)} faces {len(s.faces)}"]
        lines += ["v " + " ".join(fmt(x) for x in v.position) for v in s.vertices]
        lines += ["vn " + " ".join(fmt(x) for x in v.normal) for v in s.vertices]
        lines += ["f " + " ".join(f"{k + 1}//{k + 1}" for k in f) for f in s.faces]
        _write(path, "\n".join(lines) + "\n")
        side = path.with_suffix(".csv")
        rows = ["index," + ",".join(FIELD_NAMES)]
        rows += [f"{k}," + ",".join(fmt(x) for x in v.fields()) for k, v in enumerate(s.vertices)]
        _write(side, "\n".join(rows) + "\n")
        return [path, side]
    if fmt_name == "ply":
        head = ["ply", "format ascii 1.0", f"element vertex {len(s.vertices)}"]
        head += [f"property float {p}" for p in ("x", "y", "z", "nx", "ny", "nz") + FIELD_NAMES]
        head += [f"element face {len(s.faces)}", "property list uchar int vertex_indices", "end_header"]
        body = [" ".join(fmt(x) for x in (*v.position, *v.normal, *v.fields())) for v in s.vertices]
        body += [f"{len(f)} " + " ".join(str(k) for k in f) for f in s.faces]
        _write(path, "\n".join(head + body) + "\n")
        return [path]
    raise InvalidParams(f"unknown mesh format {fmt_name!r}")


def read_ply(path) -> tuple[dict[str, np.ndarray], list[tuple[int, ...]]]:
    """Minimal ASCII PLY reader: per-property vertex arrays and the faces."""
    try:
        text = Path(path).read_text().splitlines()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    if not text or text[0] != "ply":
        raise IoFailure(f"{path} is not a PLY file")
    props, counts, order, k = [], {}, [], 1
    while text[k] != "end_header":
        parts = text[k].split()
        if parts[0] == "element":
            counts[parts[1]] = int(parts[2])
            order.append(parts[1])
        elif parts[0] == "property" and order[-1] == "vertex":
            props.append(parts[-1])
        k += 1
    k += 1
    nv = counts.get("vertex", 0)
    data = np.array([[float(x) for x in ln.split()] for ln in text[k:k + nv]]).reshape(nv, len(props))
    faces = [tuple(int(x) for x in ln.split()[1:]) for ln in text[k + nv:k + nv + counts.get("face", 0)]]
    return {p: data[:, i] for i, p in enumerate(props)}, faces


def read_obj(path) -> tuple[np.ndarray, np.ndarray, list[tuple[int, ...]]]:
    v, vn, f = [], [], []
    for ln in Path(path).read_text().splitlines():
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "v":
            v.append([float(x) for x in parts[1:4]])
        elif parts[0] == "vn":
            vn.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            f.append(tuple(int(p.split("/")[0]) - 1 for p in parts[1:]))
    return np.array(v), np.array(vn), f


def read_sidecar(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {k: np.array([float(r[k]) for r in rows]) for k in FIELD_NAMES}
