"""Holevo information of the generalized amplitude damping channel.

The optimal ensemble is two equiprobable pure states with Bloch vectors
``(+-sqrt(1 - z^2), 0, z)``, so the Holevo information is a 1-D maximum
over ``z``. :func:`holevo_gadc` is the reference method; the stationary
point route in :func:`holevo_fixed_point` and the closed form at ``n = 1/2``
serve as cross-checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ._optimize import grid_then_golden
from .channel import GadcParams, binary_entropy

GRID_POINTS = 1001
DEFAULT_TOL = 1e-9

U_EDGE = 1.0 - 1e-9
U_SEGMENTS = 1000


class HolevoMethod(str, enum.Enum):
    GRID_REFINE = "grid_refine"
    FIXED_POINT = "fixed_point"
    CLOSED_FORM_SYMMETRIC = "closed_form_symmetric"


class NoConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnsembleZ:
    """Two-state ensemble parametrized by the shared z-component."""

    z: float

    def __post_init__(self):
        if abs(self.z) > 1.0:
            raise ValueError(f"|z| must be <= 1, got {self.z!r}")

    @property
    def plus(self) -> Tuple[float, float, float]:
        return (math.sqrt(1.0 - self.z**2), 0.0, self.z)

    @property
    def minus(self) -> Tuple[float, float, float]:
        return (-math.sqrt(1.0 - self.z**2), 0.0, self.z)

    @property
    def average(self) -> Tuple[float, float, float]:
        return (0.0, 0.0, self.z)


@dataclass(frozen=True)
class HolevoResult:
    chi: float
    z_star: float
    method: HolevoMethod
    aux: Optional[Tuple[float, float]] = None  # (u, r_star) for the fixed point


def chi_objective(ch: GadcParams, z):
    """Holevo quantity of the ``z`` ensemble after the channel, in bits.

    Vectorized over ``z``.
    """
    z = np.asarray(z, dtype=float)
    p, n = ch.p, ch.n
    out_z = (1.0 - p) * z + p * (1.0 - 2.0 * n)
    r_b = np.sqrt(np.maximum((1.0 - p) * (1.0 - z * z) + out_z * out_z, 0.0))
    avg = binary_entropy((1.0 - np.minimum(np.abs(out_z), 1.0)) / 2.0)
    pure = binary_entropy((1.0 - np.minimum(r_b, 1.0)) / 2.0)
    return avg - pure


def holevo_gadc(ch: GadcParams, tol: float = DEFAULT_TOL) -> HolevoResult:
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = np.linspace(-1.0, 1.0, GRID_POINTS)
    z, chi = grid_then_golden(lambda t: chi_objective(ch, t), grid, tol, vectorized=True)
    return HolevoResult(chi=min(max(chi, 0.0), 1.0), z_star=z, method=HolevoMethod.GRID_REFINE)


def _f(x):
    # (1+x)log2(1+x) + (1-x)log2(1-x), continuous at |x| = 1
    a = (1.0 + x) * math.log2(1.0 + x) if x > -1.0 else 0.0
    b = (1.0 - x) * math.log2(1.0 - x) if x < 1.0 else 0.0
    return a + b


def _fprime(x):
    return math.log2((1.0 + x) / (1.0 - x))


def _r_star(u, p, c):
    r2 = 1.0 - p - (u - c) ** 2 / (1.0 - p) + u * u
    return math.sqrt(r2) if r2 > 0.0 else math.nan


def _stationarity(u, p, c):
    r = _r_star(u, p, c)
    if math.isnan(r) or r >= 1.0:
        return math.nan
    return (p * u - c) * _fprime(r) + r * (1.0 - p) * _fprime(u)


def holevo_fixed_point(ch: GadcParams) -> HolevoResult:
    """Holevo information from the stationarity condition in ``u``.

    ``u`` is the output z-component of the ensemble average. The admissible
    interval is scanned in equal segments for sign changes; each bracket is
    polished with Brent's method and the first root whose ``z*`` lies in
    [-1, 1] is used.
    """
    p, n = ch.p, ch.n
    if not 0.0 < p < 1.0:
        raise ValueError(f"fixed-point route needs 0 < p < 1, got p={p!r}")
    c = p * (1.0 - 2.0 * n)
    us = np.linspace(-U_EDGE, U_EDGE, U_SEGMENTS + 1)
    gs = [_stationarity(float(u), p, c) for u in us]

    candidates = []
    for k in range(U_SEGMENTS):
        ga, gb = gs[k], gs[k + 1]
        if math.isnan(ga) or math.isnan(gb):
            continue
        if ga == 0.0:
            candidates.append(float(us[k]))
        elif ga * gb < 0.0:
            candidates.append(brentq(_stationarity, us[k], us[k + 1], args=(p, c), xtol=1e-15, rtol=4 * np.finfo(float).eps))
    if not math.isnan(gs[-1]) and gs[-1] == 0.0:
        candidates.append(float(us[-1]))

    for u in candidates:
        z_star = (u - c) / (1.0 - p)
        if abs(z_star) > 1.0:
            continue
        r = _r_star(u, p, c)
        chi = 0.5 * (_f(r) - math.log2(1.0 - u * u) - u * _fprime(u))
        return HolevoResult(chi=chi, z_star=z_star, method=HolevoMethod.FIXED_POINT, aux=(u, r))
    raise NoConvergenceError(f"no admissible stationary point for p={p!r}, n={n!r}")


def holevo_symmetric(p):
    """Closed-form Holevo information of the ``n = 1/2`` channel.

    Vectorized over ``p``.
    """
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("p outside [0, 1]")
    out = 1.0 - binary_entropy((1.0 - np.sqrt(1.0 - p)) / 2.0)
    if np.ndim(out) == 0:
        return float(out)
    return out
