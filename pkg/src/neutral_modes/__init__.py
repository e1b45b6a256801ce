"""Neutral deformation modes of minimal surfaces.

Minimal surfaces are built from Weierstrass data ``F``; a deformation is a
pair of surfaces linked by a conformal map ``h``.  The package evaluates the
stretching, drilling and bending energy densities of such deformations and
classifies which of them vanish identically.
"""

from .deformation import DeformationPair, state_at
from .domain import DomainSpec
from .energetics import EnergyDensities, Moduli, total_density
from .errors import NeutralModesError
from .holomorphic import identity, moebius, parse, special_moebius
from .meshgen import export, sample
from .neutrality import (area_preserving_moebius_check, bending_neutral_residual, classify,
                         drilling_neutral_residual, make_bending_neutral, make_bonnet,
                         make_drilling_neutral, make_goursat, spherical_arc_ratio)
from .weierstrass import WeierstrassSurface, frame_at, position_at

__version__ = "0.1.0"

__all__ = [
    "DeformationPair", "DomainSpec", "EnergyDensities", "Moduli", "NeutralModesError",
    "WeierstrassSurface", "area_preserving_moebius_check", "bending_neutral_residual", "classify",
    "drilling_neutral_residual", "export", "frame_at", "identity", "make_bending_neutral", "make_bonnet",
    "make_drilling_neutral", "make_goursat", "moebius", "parse", "position_at", "sample",
    "special_moebius", "spherical_arc_ratio", "state_at", "total_density",
]
