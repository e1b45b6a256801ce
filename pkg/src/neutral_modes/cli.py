"""Command-line driver.

Subcommands: ``surface``, ``energies``, ``classify``, ``verify`` and
``reproduce <case>``.  Every subcommand writes ``report.json`` into the
output directory.  Exit codes: 0 success, 1 configuration error, 2 numerical
check failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import reference
from .config import (JobConfig, build_pair, build_surface, load_config, moduli_of, parse_complex_list,
                     parse_grid)
from .domain import DomainSpec
from .energetics import total_density
from .errors import ConfigError, InvalidParams, IoFailure, NeutralModesError
from .holomorphic import parse, special_moebius
from .meshgen import export, fmt, sample
from .neutrality import classify, make_bending_neutral, make_bonnet, make_drilling_neutral, make_goursat
from .verification import run_all

CASES = ("soft-elasticity", "dilation", "enneper-bour3", "goursat-kappa")
SOFT_PANELS = (("b", 0.0, 1j, -1), ("c", 0.0, 1, -1), ("d", math.pi / 6, 1, -1),
               ("e", math.pi / 4, 1, -1), ("f", math.pi / 2, 1, -1))
GOURSAT_KAPPAS = (0.5, -0.5, 2 / 3, -2 / 3, 1.5, -1.5, 2.0)
TABLE_RADII = (math.exp(-0.5), 1.0, math.exp(0.5))
TABLE_THETA = math.pi / 3
ANNULUS = DomainSpec.annulus(math.exp(-1), math.e)


class CheckFailed(NeutralModesError):
    """A residual or deviation exceeded its tolerance."""


def _json_default(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(type(x))


def write_report(out: Path, report: dict) -> Path:
    path = out / "report.json"
    try:
        out.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return path


def write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(x if isinstance(x, str) else fmt(x) for x in row) for row in rows]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _rel(names):
    return [str(Path(n).name) for n in names]


# ---------------------------------------------------------------------------
# subcommands


def cmd_surface(cfg: JobConfig, out: Path, args) -> dict:
    s = build_surface(cfg)
    mesh = sample(s, grid=cfg.grid, theta_range=cfg.theta_range)
    files = export(mesh, cfg.format, out / f"surface.{cfg.format}")
    return {"command": "surface", "vertices": len(mesh.vertices), "faces": len(mesh.faces),
            "excluded": len(mesh.excluded), "files": _rel(files)}


def _field_stats(mesh) -> list[tuple]:
    rows = []
    for name in ("K", "Ws", "Wd", "Wb"):
        a = mesh.field_array(name)
        rows.append((name, float(a.min()), float(a.max()), float(np.abs(a).max())))
    return rows


def cmd_energies(cfg: JobConfig, out: Path, args) -> dict:
    d = build_pair(cfg)
    mesh = sample(d, grid=cfg.grid, theta_range=cfg.theta_range, route=cfg.route)
    files = export(mesh, cfg.format, out / f"energies.{cfg.format}")
    stats = _field_stats(mesh)
    write_csv(out / "summary.csv", ("field", "min", "max", "sup"), stats)
    mod = moduli_of(cfg)
    totals = [total_density(d, v.w, mod).w_total for v in mesh.vertices]
    return {"command": "energies", "vertices": len(mesh.vertices), "route": cfg.route,
            "summary": {r[0]: {"min": r[1], "max": r[2], "sup": r[3]} for r in stats},
            "w_total_sup": max(totals, default=0.0), "files": _rel(files) + ["summary.csv"]}


def cmd_classify(cfg: JobConfig, out: Path, args) -> dict:
    rep = classify(build_pair(cfg), tol=cfg.tol)
    print(rep.classification)
    result = {"command": "classify", **rep.as_dict()}
    if cfg.expect is not None and rep.classification != cfg.expect:
        result["expected"] = cfg.expect
        raise CheckFailed(f"classified {rep.classification}, expected {cfg.expect}", result)
    return result


def cmd_verify(cfg: JobConfig, out: Path, args) -> dict:
    scale = args.tol / 1e-9 if args.tol is not None else 1.0
    suites = run_all(tol_scale=scale, quick=args.quick)
    for s in suites:
        print(f"{s.name:28s} max_dev={s.max_deviation:.3e} tol={s.tol:.1e} {'PASS' if s.passed else 'FAIL'}")
    rows = [(s.name, s.max_deviation, s.tol, "pass" if s.passed else "fail") for s in suites]
    write_csv(out / "summary.csv", ("suite", "max_deviation", "tol", "status"), rows)
    result = {"command": "verify", "suites": [s.as_dict() for s in suites]}
    if not all(s.passed for s in suites):
        raise CheckFailed("verification suite failed", result)
    return result


def _case_pairs(case: str, args):
    """``(label, pair, closed_form(r))`` triples for a reproduction case."""
    F1, Fe = parse("recip(id)"), parse("const(1)")
    if case == "soft-elasticity":
        alphas = [args.alpha0] if args.alpha0 is not None else None
        out = []
        for panel, a0, a, c in SOFT_PANELS:
            if alphas is not None:
                a0 = alphas[0]
            out.append((f"panel-{panel}", make_bonnet(F1, a0, ANNULUS, special_moebius(a, c)),
                        lambda r: reference.soft()))
        return out
    if case == "dilation":
        lam = args.lam if args.lam is not None else 2.0
        return [(f"lambda-{fmt(lam)}", make_drilling_neutral(Fe, None, lam, 0.0, ANNULUS),
                 lambda r, lam=lam: reference.dilation(lam))]
    if case == "enneper-bour3":
        return [("enneper-bour3", make_bending_neutral(Fe, None, ANNULUS, g=parse("id")), reference.enneper_bour3)]
    if case == "goursat-kappa":
        kappas = [args.kappa] if args.kappa is not None else GOURSAT_KAPPAS
        return [(f"kappa-{fmt(k)}", make_goursat(F1, ANNULUS, kappa=k),
                 lambda r, k=k: reference.goursat_kappa(r, k)) for k in kappas]
    raise ConfigError(f"unknown case {case!r}; choose from {', '.join(CASES)}")


def cmd_reproduce(cfg: JobConfig, out: Path, args) -> dict:
    rows, worst, files = [], 0.0, []
    for label, pair, closed in _case_pairs(args.case, args):
        mesh = sample(pair, grid=cfg.grid, theta_range=cfg.theta_range)
        files += _rel(export(mesh, cfg.format, out / f"{args.case}-{label}.{cfg.format}"))
        for r in TABLE_RADII:
            w = r * complex(math.cos(TABLE_THETA), math.sin(TABLE_THETA))
            got = total_density(pair, w).as_tuple()
            ref = closed(r)
            for q, g, c in zip(("Ws", "Wd", "Wb"), got, ref):
                dev = abs(g - c) / max(1.0, abs(c))
                worst = max(worst, dev)
                rows.append((label, r, q, c, g, dev))
    write_csv(out / "summary.csv", ("case", "abs_w", "quantity", "closed_form", "computed", "deviation"), rows)
    for row in rows:
        print(f"{row[0]:16s} |w|={fmt(row[1]):12s} {row[2]} closed={fmt(row[3]):14s} computed={fmt(row[4])}")
    result = {"command": "reproduce", "case": args.case, "max_deviation": worst, "tol": cfg.tol,
              "files": files + ["summary.csv"]}
    if worst > cfg.tol:
        raise CheckFailed(f"max deviation {worst:.3e} exceeds {cfg.tol:.1e}", result)
    return result


COMMANDS = {"surface": cmd_surface, "energies": cmd_energies, "classify": cmd_classify,
            "verify": cmd_verify, "reproduce": cmd_reproduce}


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value job file")
    common.add_argument("--out", help="output directory")
    common.add_argument("--grid", help="sample grid NxM")
    common.add_argument("--tol", type=float, help="tolerance for numerical checks")
    common.add_argument("--format", choices=("obj", "ply"), help="mesh format")
    common.add_argument("--alpha0", type=float)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--kappa", type=float)
    common.add_argument("--mobius", help="a,b,c,d")
    common.add_argument("--g", help="holomorphic generator of lambda e^{i beta}")

    p = argparse.ArgumentParser(prog="neutral-modes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("surface", parents=[common], help="sample and export a minimal surface")
    sub.add_parser("energies", parents=[common], help="per-vertex energy densities of a deformation")
    sub.add_parser("classify", parents=[common], help="neutrality residuals and class")
    v = sub.add_parser("verify", parents=[common], help="cross-route and finite-difference suites")
    v.add_argument("--quick", action="store_true", help="fewer probes")
    r = sub.add_parser("reproduce", parents=[common], help="regenerate a worked example")
    r.add_argument("case", choices=CASES)
    return p


def config_from_args(args) -> JobConfig:
    cfg = load_config(args.config) if args.config else JobConfig()
    over = {"out": args.out, "format": args.format, "alpha0": args.alpha0, "lam": args.lam,
            "kappa": args.kappa, "g": args.g}
    if args.grid:
        over["grid"] = parse_grid(args.grid)
    if args.tol is not None:
        over["tol"] = args.tol
    if args.mobius:
        over["mobius"] = parse_complex_list(args.mobius, 4)
    return cfg.with_overrides(**over)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    out = Path(args.out or "out")
    try:
        cfg = config_from_args(args)
        out = Path(cfg.out)
        result = COMMANDS[args.command](cfg, out, args)
        result["status"] = "ok"
        write_report(out, result)
        return 0
    except (ConfigError, InvalidParams) as exc:
        _fail(out, args.command, "config", exc)
        return 1
    except CheckFailed as exc:
        payload = exc.args[1] if len(exc.args) > 1 else {}
        _fail(out, args.command, "check", exc, payload)
        return 2
    except NeutralModesError as exc:
        _fail(out, args.command, "numerical", exc)
        return 2


def _fail(out: Path, command: str, kind: str, exc: Exception, payload: dict | None = None) -> None:
    msg = exc.args[0] if exc.args else str(exc)
    print(f"error ({kind}): {msg}", file=sys.stderr)
    report = dict(payload or {})
    report.update({"command": command, "status": "error", "error_kind": kind,
                   "error_type": type(exc).__name__, "message": str(msg)})
    try:
        write_report(out, report)
    except IoFailure:
        pass


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
