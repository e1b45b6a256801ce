"""Closed-form energy densities of the worked examples, written directly in
``|w|`` (independent of the general assembly in :mod:`energetics`)."""

from __future__ import annotations


def bour1_curvature(r: float) -> float:
    """Gaussian curvature of the Bour surface ``F = 1/w`` at ``|w| = r``."""
    return -16 * r * r / (1 + r * r) ** 4


def enneper_bour3(r: float) -> tuple[float, float, float]:
    """Enneper (``F = 1``) onto Bour ``m = 3`` (``F* = w``), ``h = id``."""
    return 2 * (r - 1) ** 2, 16 / ((1 + r * r) ** 2 * r * r), 0.0


def goursat_kappa(r: float, kappa: float) -> tuple[float, float, float]:
    """Goursat map ``h = κw`` applied to ``F = 1/w``.

    The stretching term depends on ``|κ|`` only: replacing ``κ`` by ``-κ``
    is a half-turn of the parameter plane, which leaves every density
    unchanged.
    """
    k = abs(kappa)
    r2 = r * r
    K = bour1_curvature(r)
    w_s = 2 * (1 - 1 / k) ** 2 * ((1 - k * r2) / (1 + r2)) ** 2
    w_d = -4 * K * (1 - k * k) ** 2 * r2 / (1 + k * k * r2) ** 2
    w_b = 16 * K * K * (1 - k * k) ** 2 * (1 - k * k * r2 * r2) ** 2 / (1 + k * k * r2) ** 4
    return w_s, w_d, w_b


def dilation(lam: float) -> tuple[float, float, float]:
    """``F* = λF`` with ``h = id``: pure stretching."""
    return 2 * (lam - 1) ** 2, 0.0, 0.0


def soft() -> tuple[float, float, float]:
    """Bonnet / special Möbius families: every mode is neutral."""
    return 0.0, 0.0, 0.0
