"""Induced binary classical channels of the GADC and their capacities.

An induced channel is fixed by an encoding (one input state per symbol) and
a decoding POVM; its entries are ``p(y|x) = Tr(A(rho_x) Lambda_y)``.
Transition matrices are column-stochastic: ``t[y, x] = p(y|x)``. Input
distributions are parametrized by ``a = P(X = 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._optimize import golden_section_max
from .channel import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    STRUCTURAL_TOL,
    BlochVector,
    DensityMatrix,
    GadcParams,
    apply_gadc_density,
    binary_entropy,
    bloch_to_density,
)
from .holevo import DEFAULT_TOL, EnsembleZ, holevo_gadc


class IterationLimitError(RuntimeError):
    """Raised when Blahut-Arimoto hits ``max_iter``; carries the best iterate."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True, eq=False)
class BinaryChannel:
    t: np.ndarray

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        if t.shape != (2, 2):
            raise ValueError(f"expected a 2x2 transition matrix, got {t.shape}")
        if np.any(t < -STRUCTURAL_TOL) or np.any(t > 1.0 + STRUCTURAL_TOL):
            raise ValueError("transition probabilities must lie in [0, 1]")
        if np.max(np.abs(t.sum(axis=0) - 1.0)) > STRUCTURAL_TOL:
            raise ValueError("columns of a transition matrix must sum to 1")
        t = np.clip(t, 0.0, 1.0)
        t.setflags(write=False)
        object.__setattr__(self, "t", t)

    def mutual_information(self, a: float) -> float:
        """I(X;Y) in bits for input distribution P(X=1) = a."""
        t = self.t
        py0 = (1.0 - a) * t[0, 0] + a * t[0, 1]
        cond = (1.0 - a) * binary_entropy(t[0, 0]) + a * binary_entropy(t[0, 1])
        return binary_entropy(min(max(py0, 0.0), 1.0)) - cond


@dataclass(frozen=True)
class CapacityResult:
    capacity: float
    optimal_input: float  # P(X = 1)


class HelstromMeasurement(NamedTuple):
    projector: np.ndarray
    ambiguous: bool


def helstrom_projector(rho0: DensityMatrix, rho1: DensityMatrix) -> HelstromMeasurement:
    """Projector onto the non-negative eigenspace of ``rho0 - rho1``.

    Writing the difference as ``t I + d.sigma`` gives eigenvalues
    ``t +- |d|`` and eigenprojectors ``(I +- d.sigma/|d|)/2``. Equal inputs
    give the zero projector with ``ambiguous=True``.
    """
    diff = rho0.matrix - rho1.matrix
    t = float(np.real(np.trace(diff))) / 2.0
    d = np.array([np.real(np.trace(diff @ s)) / 2.0 for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)])
    norm = float(np.linalg.norm(d))
    if norm <= STRUCTURAL_TOL and abs(t) <= STRUCTURAL_TOL:
        return HelstromMeasurement(np.zeros((2, 2), dtype=complex), True)
    if t - norm >= 0.0:
        return HelstromMeasurement(IDENTITY.copy(), False)
    if t + norm < 0.0:
        return HelstromMeasurement(np.zeros((2, 2), dtype=complex), False)
    n_hat = d / norm
    proj = 0.5 * (IDENTITY + n_hat[0] * SIGMA_X + n_hat[1] * SIGMA_Y + n_hat[2] * SIGMA_Z)
    return HelstromMeasurement(proj, False)


def induced_channel(ch: GadcParams, inputs: Sequence[DensityMatrix], e0: np.ndarray) -> BinaryChannel:
    """Binary channel from two input states and the POVM ``{e0, I - e0}``."""
    povm = (e0, IDENTITY - e0)
    outs = [apply_gadc_density(ch, rho).matrix for rho in inputs]
    t = np.array([[np.real(np.trace(out @ e)) for out in outs] for e in povm])
    # roundoff can push a column off the simplex by ~1e-16
    t = np.clip(t, 0.0, 1.0)
    t /= t.sum(axis=0, keepdims=True)
    return BinaryChannel(t)


def _helstrom_decoding(ch, inputs, fallback):
    outs = [apply_gadc_density(ch, rho) for rho in inputs]
    meas = helstrom_projector(*outs)
    # indistinguishable outputs: every decoding is useless, so use the
    # limiting projector to keep the matrix continuous in the parameters
    return fallback if meas.ambiguous else meas.projector


def m1_channel(ch: GadcParams) -> BinaryChannel:
    """Encoding ``x -> [x]`` with Helstrom decoding (the projector ``[0]``)."""
    inputs = [bloch_to_density(BlochVector(0, 0, 1)), bloch_to_density(BlochVector(0, 0, -1))]
    e0 = _helstrom_decoding(ch, inputs, bloch_to_density(BlochVector(0, 0, 1)).matrix)
    return induced_channel(ch, inputs, e0)


def m2_channel(ch: GadcParams, z: float) -> BinaryChannel:
    """Encoding into the two ``z`` ensemble states with Helstrom decoding.

    The result is symmetric with flip probability
    ``(1 - sqrt(1 - z^2) sqrt(1 - p))/2`` and does not depend on ``n``.
    """
    ens = EnsembleZ(z)
    inputs = [bloch_to_density(BlochVector(*ens.plus)), bloch_to_density(BlochVector(*ens.minus))]
    e0 = _helstrom_decoding(ch, inputs, bloch_to_density(BlochVector(1, 0, 0)).matrix)
    return induced_channel(ch, inputs, e0)


def m2_flip_probability(p: float, z: float = 0.0) -> float:
    return (1.0 - math.sqrt(1.0 - z * z) * math.sqrt(1.0 - p)) / 2.0


def bsc_capacity(q):
    q = np.asarray(q, dtype=float)
    if np.any(q < 0.0) or np.any(q > 1.0):
        raise ValueError("flip probability outside [0, 1]")
    out = 1.0 - binary_entropy(q)
    return float(out) if np.ndim(out) == 0 else out


def binary_channel_capacity(chan: BinaryChannel, tol: float = DEFAULT_TOL) -> CapacityResult:
    """Capacity by golden-section search over the concave map a -> I(X;Y)."""
    a, c = golden_section_max(chan.mutual_information, 0.0, 1.0, tol)
    return CapacityResult(capacity=min(max(c, 0.0), 1.0), optimal_input=a)


_TINY = math.ulp(0.0)


def _divergences(t, q0):
    # D(p(.|x) || q) in bits for x = 0, 1, with 0 log 0 = 0
    q = (q0, 1.0 - q0)
    out = []
    for x in (0, 1):
        d = 0.0
        for y in (0, 1):
            ty = t[y][x]
            if ty > 0.0:
                # q[y] >= r_x t[y][x] > 0 in exact arithmetic; subnormal
                # entries can still underflow it
                d += ty * (math.log2(ty) - math.log2(max(q[y], _TINY)))
        out.append(d)
    return out


def blahut_arimoto(chan: BinaryChannel, tol: float = 1e-12, max_iter: int = 200_000) -> CapacityResult:
    """Blahut-Arimoto iteration for a binary-input channel.

    Stops when the capacity estimate changes by less than ``tol`` between
    iterates, or earlier if the gap to the upper bound
    ``max_x D(p(.|x) || q)`` is already below ``tol``. The bound gap alone
    converges very slowly for nearly useless channels, where the estimate
    itself is accurate long before.
    """
    t = chan.t.tolist()
    r1 = 0.5
    lower = prev = -math.inf
    for _ in range(int(max_iter)):
        q0 = (1.0 - r1) * t[0][0] + r1 * t[0][1]
        d0, d1 = _divergences(t, q0)
        lower = (1.0 - r1) * d0 + r1 * d1
        if max(d0, d1) - lower < tol or abs(lower - prev) < tol:
            return CapacityResult(capacity=min(max(lower, 0.0), 1.0), optimal_input=r1)
        prev = lower
        w0 = (1.0 - r1) * 2.0**d0
        w1 = r1 * 2.0**d1
        r1 = w1 / (w0 + w1)
    best = CapacityResult(capacity=min(max(lower, 0.0), 1.0), optimal_input=r1)
    raise IterationLimitError(f"Blahut-Arimoto did not converge in {max_iter} iterations", best)


def induced_gap(ch: GadcParams, tol: float = DEFAULT_TOL) -> float:
    """Holevo information minus the capacity of M2 = M2(0), in bits."""
    return holevo_gadc(ch, tol).chi - bsc_capacity(m2_flip_probability(ch.p))
