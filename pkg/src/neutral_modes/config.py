"""Job configuration: a plain ``key = value`` text format.

Grammar (one entry per line, ``#`` starts a comment)::

    family     = explicit | surface | bonnet | drilling | bending | goursat
    F          = <expression>          # see holomorphic.parse
    Fstar      = <expression>          # explicit pairs only
    h          = <expression>          # default id
    domain     = annulus(r0, r1) | disk(r) | rectangle(u0, u1, v0, v1) | plane
                 [exclude(x, y, r) ...]
    target_domain = <domain>           # explicit pairs; default follows h
    basepoint  = <complex>
    grid       = NxM
    theta_range = <float>              # radians, annuli only
    moduli     = mu_s, mu_d, mu_b
    tol        = <float>
    out        = <directory>
    format     = obj | ply
    route      = closed_form | connector | third_rank_oracle
    alpha0, lambda, beta, kappa = <float>
    g          = <expression>          # bending family: lambda e^{i beta} = g
    mobius     = a, b, c, d
    expect     = isometry | drilling_neutral | bending_neutral | generic
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .deformation import DeformationPair
from .domain import EXCLUSION_RADIUS, DomainSpec
from .energetics import ROUTES, Moduli
from .errors import ConfigError, InvalidParams, NeutralModesError
from .holomorphic import HolomorphicFn, cauchy_riemann_residual, FD_TOL, identity, moebius, parse, parse_number
from .meshgen import FORMATS
from .neutrality import CLASSES, make_bending_neutral, make_bonnet, make_drilling_neutral, make_goursat
from .weierstrass import WeierstrassSurface

FAMILIES = ("explicit", "surface", "bonnet", "drilling", "bending", "goursat")
DEFAULT_DOMAIN = f"annulus({math.exp(-1)!r}, {math.e!r})"


@dataclass(frozen=True)
class JobConfig:
    family: str = "explicit"
    F: str = "const(1)"
    Fstar: str | None = None
    h: str = "id"
    domain: str = DEFAULT_DOMAIN
    target_domain: str | None = None
    basepoint: complex | None = None
    grid: tuple[int, int] = (16, 32)
    theta_range: float = 2 * math.pi
    moduli: tuple[float, float, float] = (1.0, 1.0, 1.0)
    tol: float = 1e-9
    out: str = "out"
    format: str = "ply"
    route: str = "closed_form"
    alpha0: float = 0.0
    lam: float = 1.0
    beta: float = 0.0
    kappa: float | None = None
    g: str | None = None
    mobius: tuple[complex, complex, complex, complex] | None = None
    expect: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.route not in ROUTES:
            raise ConfigError(f"unknown route {self.route!r}")
        if self.expect is not None and self.expect not in CLASSES:
            raise ConfigError(f"unknown class {self.expect!r}")
        if min(self.grid) < 2:
            raise ConfigError("grid dimensions must be at least 2")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")

    def with_overrides(self, **kw) -> "JobConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


# ---------------------------------------------------------------------------
# value parsers

_CALL = re.compile(r"(\w+)\s*\(([^()]*)\)")


def parse_grid(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*[xX×]\s*(\d+)\s*", text)
    if not m:
        raise ConfigError(f"grid must look like NxM, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def parse_complex_list(text: str, n: int | None = None) -> tuple[complex, ...]:
    try:
        vals = tuple(parse_number(t.strip()) for t in text.split(","))
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"bad number list {text!r}") from exc
    if n is not None and len(vals) != n:
        raise ConfigError(f"expected {n} numbers, got {len(vals)} in {text!r}")
    return vals


def parse_real_list(text: str, n: int | None = None) -> tuple[float, ...]:
    vals = parse_complex_list(text, n)
    if any(v.imag for v in vals):
        raise ConfigError(f"expected real numbers in {text!r}")
    return tuple(v.real for v in vals)


def parse_domain(text: str) -> DomainSpec:
    """Inverse of ``str(DomainSpec)``, e.g. ``annulus(0.5, 2) exclude(1, 0, 1e-8)``."""
    m = re.match(r"\s*(annulus|disk|rectangle|plane)\s*(?:\(([^()]*)\))?", text)
    if not m:
        raise ConfigError(f"bad domain {text!r}")
    kind, body = m.group(1), m.group(2)
    params = parse_real_list(body) if body and body.strip() else ()
    excluded = []
    rest = text[m.end():].strip()
    for ex in _CALL.finditer(rest):
        if ex.group(1) != "exclude":
            raise ConfigError(f"unexpected {ex.group(1)!r} in domain {text!r}")
        x, y, r = parse_real_list(ex.group(2), 3)
        excluded.append((complex(x, y), r))
    if _CALL.sub("", rest).strip():
        raise ConfigError(f"trailing text in domain {text!r}")
    try:
        return DomainSpec(kind, tuple(params), tuple(excluded))
    except (InvalidParams, ValueError, TypeError) as exc:
        raise ConfigError(f"bad domain {text!r}: {exc}") from exc


def parse_expression(text: str) -> HolomorphicFn:
    try:
        return parse(text)
    except ConfigError:
        raise
    except Exception as exc:  # malformed text
        raise ConfigError(f"cannot parse expression {text!r}: {exc}") from exc


_KEYS = {
    "family": str, "F": str, "Fstar": str, "h": str, "domain": str, "target_domain": str,
    "basepoint": lambda t: parse_complex_list(t, 1)[0], "grid": parse_grid,
    "theta_range": lambda t: parse_real_list(t, 1)[0], "moduli": lambda t: parse_real_list(t, 3),
    "tol": lambda t: parse_real_list(t, 1)[0], "out": str, "format": lambda t: t.lower(),
    "route": str, "alpha0": lambda t: parse_real_list(t, 1)[0],
    "lambda": lambda t: parse_real_list(t, 1)[0], "beta": lambda t: parse_real_list(t, 1)[0],
    "kappa": lambda t: parse_real_list(t, 1)[0], "g": str,
    "mobius": lambda t: parse_complex_list(t, 4), "expect": str,
}
_FIELD = {"lambda": "lam"}


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            out[_FIELD.get(key, key)] = _KEYS[key](value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    return out


def load_config(path) -> JobConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return JobConfig(**parse_config_text(text))


def dump_config(cfg: JobConfig) -> str:
    """Inverse of :func:`load_config` for the fields that are set."""
    lines = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if v is None:
            continue
        key = {"lam": "lambda"}.get(f.name, f.name)
        if f.name == "grid":
            v = f"{v[0]}x{v[1]}"
        elif isinstance(v, tuple):
            v = ", ".join(repr(x) for x in v)
        lines.append(f"{key} = {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# building objects


def check_holomorphic(f: HolomorphicFn, domain: DomainSpec, name: str) -> None:
    """Cauchy-Riemann spot check at a few points of the domain."""
    from .deformation import lattice_points

    pts = lattice_points(domain, 3) if domain.kind != "plane" else [0.5 + 0.5j, -0.7 + 0.2j]
    for w in pts:
        try:
            fw = f(w)
        except NeutralModesError:
            continue
        if cauchy_riemann_residual(f, w) > FD_TOL * max(1.0, abs(fw)):
            raise ConfigError(f"{name} fails the Cauchy-Riemann check at {w!r}")


def _h_of(cfg: JobConfig) -> HolomorphicFn | None:
    if cfg.mobius is not None:
        return moebius(*cfg.mobius)
    return None if cfg.h.strip() == "id" else parse_expression(cfg.h)


def build_surface(cfg: JobConfig) -> WeierstrassSurface:
    dom = parse_domain(cfg.domain)
    F = parse_expression(cfg.F)
    check_holomorphic(F, dom, "F")
    dom = dom.with_exclusions(F.poles(), EXCLUSION_RADIUS) if F.poles() else dom
    if cfg.basepoint is not None:
        bp = cfg.basepoint
    else:
        from .neutrality import pick_basepoint
        bp = pick_basepoint(dom, F.poles() + F.zeros())
    return WeierstrassSurface(F, dom, bp)


def build_pair(cfg: JobConfig) -> DeformationPair:
    """Assemble the deformation pair described by ``cfg``."""
    dom = parse_domain(cfg.domain)
    F = parse_expression(cfg.F)
    check_holomorphic(F, dom, "F")
    h = _h_of(cfg)
    bp = cfg.basepoint
    if cfg.family == "bonnet":
        return make_bonnet(F, cfg.alpha0, dom, h, basepoint=bp)
    if cfg.family == "drilling":
        return make_drilling_neutral(F, h, cfg.lam, cfg.alpha0, dom, basepoint=bp)
    if cfg.family == "bending":
        g = parse_expression(cfg.g) if cfg.g else None
        return make_bending_neutral(F, h, dom, g=g, lam=cfg.lam, beta=cfg.beta, basepoint=bp)
    if cfg.family == "goursat":
        if cfg.kappa is not None:
            return make_goursat(F, dom, kappa=cfg.kappa, basepoint=bp)
        if cfg.mobius is None:
            raise ConfigError("goursat needs kappa or mobius")
        return make_goursat(F, dom, moebius_coeffs=cfg.mobius, basepoint=bp)
    if cfg.family == "explicit":
        if cfg.Fstar is None:
            raise ConfigError("explicit pairs need Fstar")
        Fs = parse_expression(cfg.Fstar)
        h = h if h is not None else identity()
        from .neutrality import pick_basepoint
        src_dom = dom.with_exclusions(h.poles()) if h.poles() else dom
        bp = bp if bp is not None else pick_basepoint(src_dom, tuple(h.poles()) + F.poles() + F.zeros())
        if cfg.target_domain is not None:
            tdom = parse_domain(cfg.target_domain)
        elif cfg.h.strip() == "id" and cfg.mobius is None:
            tdom = dom
        else:
            tdom = DomainSpec.plane()
        check_holomorphic(Fs, tdom, "Fstar")
        if Fs.poles():
            tdom = tdom.with_exclusions(Fs.poles())
        source = WeierstrassSurface(F, src_dom, bp)
        target = WeierstrassSurface(Fs, tdom, h(bp))
        return DeformationPair(source, target, h)
    raise ConfigError(f"family {cfg.family!r} does not describe a pair")


def moduli_of(cfg: JobConfig) -> Moduli:
    try:
        return Moduli(*cfg.moduli)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
