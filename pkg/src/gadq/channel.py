"""Qubit states, entropies and the generalized amplitude damping channel.

States are carried primarily as Bloch vectors; density matrices exist for
cross-checks and for building measurements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

STRUCTURAL_TOL = 1e-12
OPTIMIZATION_TOL = 1e-6

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

EBT_MIN_DAMPING = 2.0 * (math.sqrt(2.0) - 1.0)


def _clamp_unit(value: float, name: str) -> float:
    if not -STRUCTURAL_TOL <= value <= 1.0 + STRUCTURAL_TOL:
        raise ValueError(f"{name}={value!r} outside [0, 1]")
    return min(max(float(value), 0.0), 1.0)


@dataclass(frozen=True)
class GadcParams:
    """Damping probability ``p`` and mixing parameter ``n`` of a GADC."""

    p: float
    n: float

    def __post_init__(self):
        object.__setattr__(self, "p", _clamp_unit(self.p, "p"))
        object.__setattr__(self, "n", _clamp_unit(self.n, "n"))


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.norm > 1.0 + STRUCTURAL_TOL:
            raise ValueError(f"Bloch vector norm {self.norm!r} exceeds 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated 2x2 qubit density matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > STRUCTURAL_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > STRUCTURAL_TOL:
            raise ValueError("density matrix does not have unit trace")
        if np.linalg.eigvalsh(m).min() < -STRUCTURAL_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def to_bloch(self) -> BlochVector:
        return density_to_bloch(self)


class KrausSet(NamedTuple):
    k0: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray

    def completeness(self) -> np.ndarray:
        """Return ``sum K^dagger K``, which is the identity for a channel."""
        return sum(k.conj().T @ k for k in self)


def bloch_to_density(r: BlochVector) -> DensityMatrix:
    return DensityMatrix(0.5 * (IDENTITY + r.x * SIGMA_X + r.y * SIGMA_Y + r.z * SIGMA_Z))


def density_to_bloch(rho: DensityMatrix) -> BlochVector:
    m = rho.matrix
    return BlochVector(
        float(np.real(np.trace(m @ SIGMA_X))),
        float(np.real(np.trace(m @ SIGMA_Y))),
        float(np.real(np.trace(m @ SIGMA_Z))),
    )


def binary_entropy(x):
    """Binary entropy in bits, with ``0 log 0 = 0``.

    Accepts a scalar or an array. Arguments within 1e-12 of [0, 1] are
    clamped; anything further out raises ``ValueError``.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -STRUCTURAL_TOL) or np.any(arr > 1.0 + STRUCTURAL_TOL):
        raise ValueError("binary_entropy argument outside [0, 1]")
    arr = np.clip(arr, 0.0, 1.0)
    q = 1.0 - arr
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(arr > 0.0, arr * np.log2(np.where(arr > 0.0, arr, 1.0)), 0.0)
        b = np.where(q > 0.0, q * np.log2(np.where(q > 0.0, q, 1.0)), 0.0)
    out = -(a + b)
    if out.ndim == 0:
        return float(out)
    return out


def qubit_entropy(r: BlochVector) -> float:
    """Von Neumann entropy (bits) of the state with Bloch vector ``r``."""
    norm = r.norm
    if norm > 1.0 + STRUCTURAL_TOL:
        raise ValueError(f"Bloch vector norm {norm!r} exceeds 1")
    return binary_entropy((1.0 - min(norm, 1.0)) / 2.0)


def kraus_operators(ch: GadcParams) -> KrausSet:
    p, n = ch.p, ch.n
    k0 = math.sqrt(1 - n) * np.array([[1, 0], [0, math.sqrt(1 - p)]], dtype=complex)
    k1 = math.sqrt(p * (1 - n)) * np.array([[0, 1], [0, 0]], dtype=complex)
    k2 = math.sqrt(n) * np.array([[math.sqrt(1 - p), 0], [0, 1]], dtype=complex)
    k3 = math.sqrt(p * n) * np.array([[0, 0], [1, 0]], dtype=complex)
    return KrausSet(k0, k1, k2, k3)


def apply_gadc_bloch(ch: GadcParams, r: BlochVector) -> BlochVector:
    s = math.sqrt(1.0 - ch.p)
    z = (1.0 - ch.p) * r.z + ch.p * (1.0 - 2.0 * ch.n)
    return BlochVector(s * r.x, s * r.y, z)


def apply_gadc_density(ch: GadcParams, rho: DensityMatrix) -> DensityMatrix:
    m = rho.matrix
    out = sum(k @ m @ k.conj().T for k in kraus_operators(ch))
    return DensityMatrix(out)


def is_entanglement_breaking(ch: GadcParams) -> bool:
    p, n = ch.p, ch.n
    if p < EBT_MIN_DAMPING:
        return False
    disc = p * p + 4.0 * p - 4.0
    if disc < 0.0:
        return False
    ell = math.sqrt(disc / (p * p))
    return (1.0 - ell) / 2.0 <= n <= (1.0 + ell) / 2.0


def ebt_threshold(n: float) -> float:
    """Smallest damping ``p`` above which the GADC at mixing ``n`` is
    entanglement breaking.

    Mixing values above 1/2 are folded by the ``n -> 1 - n`` symmetry. The
    formula is 0/0 at ``n = 0`` (and hence ``n = 1``), which raises.
    """
    if not 0.0 < n < 1.0:
        raise ValueError(f"ebt_threshold undefined for n={n!r}; need 0 < n < 1")
    if n > 0.5:
        n = 1.0 - n
    v = n * (1.0 - n)
    return max(EBT_MIN_DAMPING, (math.sqrt(1.0 + 4.0 * v) - 1.0) / (2.0 * v))
