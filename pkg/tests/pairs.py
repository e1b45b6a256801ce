"""Deformation pairs shared by several test modules."""

import math
from functools import lru_cache

from neutral_modes.domain import DomainSpec
from neutral_modes.holomorphic import parse, special_moebius
from neutral_modes.neutrality import make_bending_neutral, make_bonnet, make_drilling_neutral, make_goursat

ANNULUS = DomainSpec.annulus(math.exp(-1), math.e)
BOUR1 = parse("recip(id)")
ENNEPER = parse("const(1)")


@lru_cache(maxsize=None)
def pair(name: str):
    if name == "enneper-bour3":
        return make_bending_neutral(ENNEPER, None, ANNULUS, g=parse("id"))
    if name == "goursat-2":
        return make_goursat(BOUR1, ANNULUS, kappa=2.0)
    if name == "goursat-affine":
        return make_goursat(BOUR1, ANNULUS, moebius_coeffs=(1, 1, 0, 2))
    if name == "soft":
        return make_bonnet(BOUR1, math.pi / 4, ANNULUS, special_moebius(1, -1))
    if name == "dilation":
        return make_drilling_neutral(ENNEPER, None, 2.0, 0.0, ANNULUS)
    if name == "bending-special":
        return make_bending_neutral(BOUR1, special_moebius(1j, -1), ANNULUS, g=parse("exp(id)"))
    raise KeyError(name)


NAMES = ("enneper-bour3", "goursat-2", "goursat-affine", "soft", "dilation", "bending-special")


def safe(name: str, w: complex, margin: float = 0.05) -> bool:
    d = pair(name)
    return all(abs(w - p) > margin for p in d.h.poles())
