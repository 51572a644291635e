"""Capacity of the symmetric GAD queue-channel in bits per second.

A qubit that spends ``W`` seconds in the system sees an ``n = 1/2`` GADC
with damping ``1 - exp(-kappa W)``; the capacity is ``lambda`` times the
stationary mean of the per-qubit Holevo information. Expanding that mean in
powers of ``exp(-kappa W)`` turns it into a series over the Laplace
transform of the sojourn law, which is what the analytic routines evaluate.

A deterministic flight time ``T_f`` acts as a fixed shift ``W -> W + T_f``
and is not modelled separately.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.special import digamma

from ._optimize import golden_section_max
from .holevo import holevo_symmetric
from .queueing import (
    DEFAULT_BATCHES,
    DEFAULT_SEED,
    DistributionSpec,
    QueueConfig,
    WaitingTimes,
    batch_means,
    gm1_sigma,
    mm1_sojourn_law,
    simulate_queue,
)

SERIES_TOL = 1e-10
MAX_SERIES_TERMS = 1_000_000
LN2 = math.log(2.0)


class CapacityMethod(str, enum.Enum):
    MONTE_CARLO = "monte_carlo"
    SERIES_CLOSED_FORM = "series_closed_form"
    SERIES_EMPIRICAL = "series_empirical"


@dataclass(frozen=True)
class DecoherenceModel:
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")


@dataclass(frozen=True)
class CapacityEstimate:
    value: float
    std_err: float
    method: CapacityMethod
    truncation_k: Optional[int] = None


def p_eff(w, model: DecoherenceModel):
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("waiting time must be non-negative")
    out = -np.expm1(-model.kappa * w)
    return float(out) if out.ndim == 0 else out


def per_qubit_capacity(w, model: DecoherenceModel):
    """Bits per qubit after a sojourn of ``w`` seconds; vectorized."""
    return holevo_symmetric(p_eff(w, model))


def queue_capacity_mc(
    cfg: QueueConfig,
    model: DecoherenceModel,
    n: int = 1_000_000,
    burn_in: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    batches: int = DEFAULT_BATCHES,
) -> CapacityEstimate:
    waits = simulate_queue(cfg, n, burn_in, seed)
    return capacity_from_waits(waits, model, batches)


def capacity_from_waits(waits: WaitingTimes, model: DecoherenceModel, batches: int = DEFAULT_BATCHES) -> CapacityEstimate:
    lam = waits.config.lam
    est = batch_means(per_qubit_capacity(waits.samples, model), batches)
    return CapacityEstimate(lam * est.value, lam * est.std_err, CapacityMethod.MONTE_CARLO)


def series_tail(k):
    """``sum_{j > k} 1/(2j(2j-1))``, via digamma; vectorized over ``k``."""
    k = np.asarray(k, dtype=float)
    out = 0.5 * (digamma(k + 1.0) - digamma(k + 0.5))
    return float(out) if out.ndim == 0 else out


def _laplace_values(laplace, s):
    out = None
    try:
        out = np.asarray(laplace(s), dtype=float)
    except (TypeError, ValueError):
        pass
    if out is None or out.shape != s.shape:
        out = np.array([float(laplace(x)) for x in s])
    return out


def capacity_series(
    laplace: Callable[[float], float],
    lam: float,
    model: DecoherenceModel,
    tol: float = SERIES_TOL,
    method: CapacityMethod = CapacityMethod.SERIES_CLOSED_FORM,
    max_terms: int = MAX_SERIES_TERMS,
) -> CapacityEstimate:
    """``(lam/ln 2) sum_k L(kappa k) / (2k(2k-1))`` for a sojourn transform ``L``.

    ``L`` is non-increasing, so after ``K`` terms the remainder lies in
    ``[0, B_K]`` with ``B_K = (lam/ln 2) L(kappa (K+1)) sum_{k>K} 1/(2k(2k-1))``.
    Summation stops at the first ``K`` whose term and ``B_K`` are both below
    ``tol`` (or at ``max_terms``). ``B_K`` is added to the value, which makes
    it exact for flat ``L``, and is reported as ``std_err``.

    ``laplace`` may be vectorized; scalar-only callables are looped.
    """
    scale = lam / LN2
    total = 0.0
    k0 = 0
    chunk = 64
    while True:
        ks = np.arange(k0 + 1, min(k0 + chunk, max_terms) + 2, dtype=float)
        lv = _laplace_values(laplace, model.kappa * ks)
        terms = scale * lv[:-1] / (2.0 * ks[:-1] * (2.0 * ks[:-1] - 1.0))
        tails = scale * lv[1:] * series_tail(ks[:-1])
        done = np.flatnonzero((terms < tol) & (tails < tol))
        if done.size or ks[-2] >= max_terms:
            last = int(done[0]) if done.size else len(terms) - 1
            total += float(terms[: last + 1].sum())
            k = int(ks[last])
            tail = float(tails[last])
            return CapacityEstimate(total + tail, tail, CapacityMethod(method), truncation_k=k)
        total += float(terms.sum())
        k0 = int(ks[-2])
        chunk = min(2 * chunk, 1 << 16)


def capacity_series_empirical(waits: WaitingTimes, model: DecoherenceModel, tol: float = 1e-6, batches: int = DEFAULT_BATCHES) -> CapacityEstimate:
    """Series evaluation with the sample Laplace transform of simulated waits.

    ``std_err`` combines the truncation interval with the batch-means error
    of the underlying Monte Carlo mean.
    """
    samples = waits.samples

    def laplace(s):
        return float(np.exp(-s * samples).mean())

    est = capacity_series(laplace, waits.config.lam, model, tol, CapacityMethod.SERIES_EMPIRICAL)
    mc = capacity_from_waits(waits, model, batches)
    return CapacityEstimate(est.value, math.hypot(est.std_err, mc.std_err), est.method, est.truncation_k)


def mm1_capacity_closed_form(lam: float, mu: float, model: DecoherenceModel, tol: float = SERIES_TOL) -> CapacityEstimate:
    law = mm1_sojourn_law(lam, mu)
    return capacity_series(law.laplace, lam, model, tol)


class Evaluator(str, enum.Enum):
    MM1_CLOSED_FORM = "mm1_closed_form"
    MONTE_CARLO = "mc"


@dataclass(frozen=True)
class LambdaOptimum:
    lambda_star: float
    capacity_star: float
    kappa: float
    mu: float
    evaluator: str
    tolerance: float

    def to_dict(self):
        return {
            "lambda_star": self.lambda_star,
            "capacity_star": self.capacity_star,
            "kappa": self.kappa,
            "mu": self.mu,
            "evaluator": self.evaluator,
            "tolerance": self.tolerance,
        }


def optimize_lambda(
    mu: float,
    model: DecoherenceModel,
    evaluator: Evaluator = Evaluator.MM1_CLOSED_FORM,
    tol: float = 1e-9,
    template: Optional[QueueConfig] = None,
    n: int = 1_000_000,
    burn_in: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    grid_points: int = 99,
) -> LambdaOptimum:
    """Arrival rate maximizing the queue-channel capacity on ``(0, mu)``.

    Grid first (``grid_points`` interior points), then golden-section on
    the cells around the best grid point. The Monte Carlo evaluator reuses
    ``seed`` at every rate, so the objective is a smooth function of
    ``lambda`` for a fixed realization of the uniforms.
    """
    if not mu > 0:
        raise ValueError("mu must be positive")
    evaluator = Evaluator(evaluator)
    if evaluator is Evaluator.MM1_CLOSED_FORM:

        def capacity(lam):
            return mm1_capacity_closed_form(lam, mu, model).value

    else:
        if template is None:
            template = QueueConfig.mm1(0.5 * mu, mu)
        if abs(template.mu - mu) > 1e-12 * mu:
            raise ValueError("template service rate differs from mu")

        def capacity(lam):
            return queue_capacity_mc(template.with_arrival_rate(lam), model, n, burn_in, seed).value

    grid = mu * np.arange(1, grid_points + 1) / (grid_points + 1)
    values = [capacity(float(x)) for x in grid]
    i = int(np.argmax(values))
    lo = grid[i - 1] if i > 0 else 0.5 * grid[0]
    hi = grid[i + 1] if i + 1 < len(grid) else 0.5 * (grid[-1] + mu)
    lam_star, c_star = golden_section_max(capacity, float(lo), float(hi), tol)
    if values[i] > c_star:
        lam_star, c_star = float(grid[i]), values[i]
    return LambdaOptimum(lam_star, c_star, model.kappa, mu, evaluator.value, tol)


@dataclass(frozen=True)
class RankedCapacity:
    spec: DistributionSpec
    estimate: CapacityEstimate
    sigma: Optional[float] = None


def compare_service_distributions(
    lam: float,
    mu: float,
    model: DecoherenceModel,
    specs: Sequence[DistributionSpec],
    n: int = 1_000_000,
    seed: int = DEFAULT_SEED,
    burn_in: Optional[int] = None,
) -> List[RankedCapacity]:
    """M/G/1 capacities for each service law, best first.

    All runs share ``seed``; arrivals are then identical across specs
    (common random numbers), and services come from the same uniforms.
    """
    arrival = DistributionSpec.exponential(1.0 / lam)
    ranked = []
    for spec in specs:
        if abs(spec.mean - 1.0 / mu) > 1e-12 / mu:
            raise ValueError(f"service law {spec} does not have mean 1/mu")
        cfg = QueueConfig(arrival, spec)
        ranked.append(RankedCapacity(spec, queue_capacity_mc(cfg, model, n, burn_in, seed)))
    ranked.sort(key=lambda r: r.estimate.value, reverse=True)
    return ranked


def compare_arrival_distributions(
    lam: float,
    mu: float,
    model: DecoherenceModel,
    specs: Sequence[DistributionSpec],
    tol: float = SERIES_TOL,
) -> List[RankedCapacity]:
    """G/M/1 capacities for each arrival law, best first (analytic)."""
    ranked = []
    for spec in specs:
        if abs(spec.mean - 1.0 / lam) > 1e-12 / lam:
            raise ValueError(f"arrival law {spec} does not have mean 1/lambda")
        sol = gm1_sigma(spec, mu)
        est = capacity_series(sol.sojourn.laplace, lam, model, tol)
        ranked.append(RankedCapacity(spec, est, sol.sigma))
    ranked.sort(key=lambda r: r.estimate.value, reverse=True)
    return ranked
