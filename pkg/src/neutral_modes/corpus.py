"""Registered deformation pairs used by the verification suite.

Every entry records the class it must be assigned by :func:`classify`.
All pairs live on the annulus ``1/e ≤ |w| ≤ e`` so that multivalued
targets (``arg w`` fields) are covered as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .deformation import DeformationPair
from .domain import DomainSpec
from .holomorphic import parse, special_moebius
from .neutrality import make_bending_neutral, make_bonnet, make_drilling_neutral, make_goursat

ANNULUS = DomainSpec.annulus(math.exp(-1), math.e)
ENNEPER = "const(1)"
BOUR1 = "recip(id)"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expected: str
    build: Callable[[], DeformationPair]


def _bonnet(F, alpha0, a=None, c=None):
    h = special_moebius(a, c) if a is not None else None
    return lambda: make_bonnet(parse(F), alpha0, ANNULUS, h)


def _drilling(F, lam, alpha0=0.0, a=None, c=None):
    h = special_moebius(a, c) if a is not None else None
    return lambda: make_drilling_neutral(parse(F), h, lam, alpha0, ANNULUS)


def _bending(F, g, a=None, c=None):
    h = special_moebius(a, c) if a is not None else None
    return lambda: make_bending_neutral(parse(F), h, ANNULUS, g=parse(g))


def _goursat(F, kappa=None, coeffs=None):
    return lambda: make_goursat(parse(F), ANNULUS, moebius_coeffs=coeffs, kappa=kappa)


ENTRIES = (
    CorpusEntry("bonnet-bour1-pi2", "isometry", _bonnet(BOUR1, math.pi / 2)),
    CorpusEntry("bonnet-enneper-pi3", "isometry", _bonnet(ENNEPER, math.pi / 3)),
    CorpusEntry("soft-i-pi4", "isometry", _bonnet(BOUR1, math.pi / 4, 1j, -1)),
    CorpusEntry("soft-1-pi6", "isometry", _bonnet(BOUR1, math.pi / 6, 1, -1)),
    CorpusEntry("goursat-special", "isometry", _goursat(BOUR1, coeffs=(1j, 1, -1, -1j))),
    CorpusEntry("dilation-enneper-2", "drilling_neutral", _drilling(ENNEPER, 2.0)),
    CorpusEntry("dilation-bour1-half", "drilling_neutral", _drilling(BOUR1, 0.5, 0.7)),
    CorpusEntry("drilling-special-3", "drilling_neutral", _drilling(BOUR1, 3.0, 0.3, 1, -1)),
    CorpusEntry("enneper-bour3", "bending_neutral", _bending(ENNEPER, "id")),
    CorpusEntry("enneper-w2", "bending_neutral", _bending(ENNEPER, "pow(2,id)")),
    CorpusEntry("bour1-exp", "bending_neutral", _bending(BOUR1, "exp(id)")),
    CorpusEntry("bour1-special-w", "bending_neutral", _bending(BOUR1, "id", 1j, -1)),
    CorpusEntry("goursat-2", "generic", _goursat(BOUR1, kappa=2.0)),
    CorpusEntry("goursat-minus-half", "generic", _goursat(BOUR1, kappa=-0.5)),
    CorpusEntry("goursat-3-2", "generic", _goursat(BOUR1, kappa=1.5)),
    CorpusEntry("goursat-affine", "generic", _goursat(BOUR1, coeffs=(1, 1, 0, 2))),
)


def entries() -> tuple[CorpusEntry, ...]:
    return ENTRIES


def get(name: str) -> CorpusEntry:
    for e in ENTRIES:
        if e.name == name:
            return e
    raise KeyError(name)
