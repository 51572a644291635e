"""Single-server FCFS queue: sampling, Lindley recursion and stationary laws.

``W`` throughout is the sojourn time of a qubit, i.e. its own service is
included (``W_1 = S_1``).

Random streams: the master seed feeds a :class:`numpy.random.SeedSequence`
that is spawned into one child per logical sequence (arrivals, services).
Every variate is produced by inverse-CDF from a uniform of its stream, so
two runs that share a seed and an arrival law see identical arrivals even
when their service laws differ.
"""

from __future__ import annotations

import csv
import enum
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import gammaincinv

log = logging.getLogger(__name__)

DEFAULT_SEED = 0xC0FFEE
DEFAULT_BATCHES = 50


class Kind(str, enum.Enum):
    EXPONENTIAL = "exponential"
    DETERMINISTIC = "deterministic"
    UNIFORM = "uniform"
    GAMMA = "gamma"


@dataclass(frozen=True)
class DistributionSpec:
    """Law of an inter-arrival or service time.

    ``shape`` is the gamma shape ``k`` (variance ``mean^2/k``) or, for the
    uniform law, the relative half-width ``w``: support
    ``[mean(1 - w), mean(1 + w)]`` with ``0 < w <= 1``.
    """

    kind: Kind
    mean: float
    shape: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not self.mean > 0:
            raise ValueError(f"mean must be positive, got {self.mean!r}")
        if self.kind is Kind.GAMMA:
            if self.shape is None or not self.shape > 0:
                raise ValueError("gamma law needs a positive shape")
        elif self.kind is Kind.UNIFORM:
            if self.shape is None or not 0 < self.shape <= 1:
                raise ValueError("uniform law needs a relative half-width in (0, 1]")
        elif self.shape is not None:
            raise ValueError(f"{self.kind.value} law takes no shape parameter")

    @classmethod
    def exponential(cls, mean):
        return cls(Kind.EXPONENTIAL, mean)

    @classmethod
    def deterministic(cls, mean):
        return cls(Kind.DETERMINISTIC, mean)

    @classmethod
    def uniform(cls, mean, half_width):
        return cls(Kind.UNIFORM, mean, half_width)

    @classmethod
    def gamma(cls, mean, shape):
        return cls(Kind.GAMMA, mean, shape)

    @property
    def rate(self) -> float:
        return 1.0 / self.mean

    @property
    def variance(self) -> float:
        if self.kind is Kind.EXPONENTIAL:
            return self.mean**2
        if self.kind is Kind.DETERMINISTIC:
            return 0.0
        if self.kind is Kind.GAMMA:
            return self.mean**2 / self.shape
        return (self.mean * self.shape) ** 2 / 3.0

    @property
    def support_min(self) -> float:
        if self.kind is Kind.DETERMINISTIC:
            return self.mean
        if self.kind is Kind.UNIFORM:
            return self.mean * (1.0 - self.shape)
        return 0.0

    def with_mean(self, mean: float) -> "DistributionSpec":
        return DistributionSpec(self.kind, mean, self.shape)

    def quantile(self, u):
        """Inverse CDF, vectorized over ``u`` in [0, 1)."""
        u = np.asarray(u, dtype=float)
        m = self.mean
        if self.kind is Kind.EXPONENTIAL:
            return -m * np.log1p(-u)
        if self.kind is Kind.DETERMINISTIC:
            return np.full_like(u, m)
        if self.kind is Kind.UNIFORM:
            return m * (1.0 - self.shape) + 2.0 * m * self.shape * u
        return gammaincinv(self.shape, u) * (m / self.shape)

    def laplace(self, s):
        """``E[exp(-s X)]``, vectorized over ``s >= 0``."""
        s = np.asarray(s, dtype=float)
        m = self.mean
        if self.kind is Kind.EXPONENTIAL:
            out = 1.0 / (1.0 + s * m)
        elif self.kind is Kind.DETERMINISTIC:
            out = np.exp(-s * m)
        elif self.kind is Kind.GAMMA:
            out = (1.0 + s * m / self.shape) ** (-self.shape)
        else:
            lo, hi = m * (1.0 - self.shape), m * (1.0 + self.shape)
            safe = np.where(s > 0, s, 1.0)
            # expm1 keeps the small-s limit accurate
            width = safe * (hi - lo)
            out = np.where(s > 0, np.exp(-safe * lo) * -np.expm1(-width) / width, 1.0)
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class QueueConfig:
    arrival: DistributionSpec
    service: DistributionSpec

    def __post_init__(self):
        if not self.lam < self.mu:
            raise ValueError(f"unstable queue: lambda={self.lam!r} >= mu={self.mu!r}")

    @property
    def lam(self) -> float:
        return self.arrival.rate

    @property
    def mu(self) -> float:
        return self.service.rate

    @classmethod
    def mm1(cls, lam, mu):
        return cls(DistributionSpec.exponential(1.0 / lam), DistributionSpec.exponential(1.0 / mu))

    def with_arrival_rate(self, lam: float) -> "QueueConfig":
        return QueueConfig(self.arrival.with_mean(1.0 / lam), self.service)


class Estimate(NamedTuple):
    value: float
    std_err: float


def batch_means(x, batches: int = DEFAULT_BATCHES) -> Estimate:
    """Sample mean with a batch-means standard error.

    Consecutive sojourn times are correlated, so the i.i.d. formula would
    understate the error; non-overlapping batch averages are close to
    independent once the batches are much longer than the correlation time.
    """
    x = np.asarray(x, dtype=float)
    mean = float(x.mean())
    b = min(batches, x.size)
    if b < 2:
        return Estimate(mean, math.inf)
    size = x.size // b
    means = x[: size * b].reshape(b, size).mean(axis=1)
    return Estimate(mean, float(means.std(ddof=1) / math.sqrt(b)))


@dataclass(frozen=True, eq=False)
class WaitingTimes:
    samples: np.ndarray
    burn_in: int
    seed: int
    config: QueueConfig

    def mean(self, batches: int = DEFAULT_BATCHES) -> Estimate:
        return batch_means(self.samples, batches)

    def to_csv(self, path) -> None:
        write_waits_csv(self.samples, path)


@dataclass(frozen=True)
class ExponentialLaw:
    rate: float

    @property
    def mean(self) -> float:
        return 1.0 / self.rate

    def laplace(self, s):
        s = np.asarray(s, dtype=float)
        out = self.rate / (self.rate + s)
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Gm1Solution:
    sigma: float
    mu: float
    sojourn: ExponentialLaw = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sojourn", ExponentialLaw(self.mu * (1.0 - self.sigma)))

    @property
    def sojourn_mean(self) -> float:
        return self.sojourn.mean


def streams(seed: int):
    """Independent (arrival, service) generators derived from ``seed``."""
    arr, srv = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(arr), np.random.default_rng(srv)


def sample(dist: DistributionSpec, rng: np.random.Generator, size=None):
    """Draw from ``dist`` by inverse CDF of uniforms taken from ``rng``."""
    u = rng.random(size)
    x = dist.quantile(u)
    return float(x) if size is None else x


def lindley_waits(arrivals: Sequence[float], services: Sequence[float]) -> np.ndarray:
    """Sojourn times from inter-arrival gaps ``A_i`` and services ``S_i``.

    ``W_1 = S_1`` and ``W_{i+1} = max(W_i - A_i, 0) + S_{i+1}``; needs one
    more service than gaps.
    """
    a = np.asarray(arrivals, dtype=float).tolist()
    s = np.asarray(services, dtype=float).tolist()
    if len(s) != len(a) + 1:
        raise ValueError(f"need len(services) == len(arrivals) + 1, got {len(s)} and {len(a)}")
    out = [0.0] * len(s)
    w = s[0]
    out[0] = w
    for i, gap in enumerate(a):
        w = w - gap
        if w < 0.0:
            w = 0.0
        w += s[i + 1]
        out[i + 1] = w
    return np.array(out)


def default_burn_in(n: int) -> int:
    return max(10_000, n // 100)


def simulate_queue(cfg: QueueConfig, n: int, burn_in: Optional[int] = None, seed: int = DEFAULT_SEED) -> WaitingTimes:
    """Simulate ``n + burn_in`` sojourn times and drop the first ``burn_in``."""
    if n <= 0:
        raise ValueError("n must be positive")
    if burn_in is None:
        burn_in = default_burn_in(n)
    if cfg.lam >= 0.99 * cfg.mu:
        log.warning("queue is close to instability (lambda/mu = %.4f)", cfg.lam / cfg.mu)
    total = n + burn_in
    rng_a, rng_s = streams(seed)
    arrivals = sample(cfg.arrival, rng_a, total - 1)
    services = sample(cfg.service, rng_s, total)
    waits = lindley_waits(arrivals, services)[burn_in:]
    waits.setflags(write=False)
    return WaitingTimes(waits, burn_in, seed, cfg)


def mm1_sojourn_law(lam: float, mu: float) -> ExponentialLaw:
    if not 0 <= lam < mu:
        raise ValueError(f"M/M/1 needs 0 <= lambda < mu, got lambda={lam!r}, mu={mu!r}")
    return ExponentialLaw(mu - lam)


def gm1_sigma(arrival: DistributionSpec, mu: float, tol: float = 1e-13) -> Gm1Solution:
    """Root in (0, 1) of ``sigma = E[exp(-mu (1 - sigma) A)]`` by bisection."""
    if not arrival.mean > 1.0 / mu:
        raise ValueError("G/M/1 needs mean inter-arrival time > 1/mu")

    def g(sig):
        return arrival.laplace(mu * (1.0 - sig)) - sig

    lo, hi = 1e-12, 1.0 - 1e-12
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0.0 and g_hi < 0.0):
        raise ValueError(f"G/M/1 fixed point has no sign change (g({lo})={g_lo}, g({hi})={g_hi})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return Gm1Solution(sigma=0.5 * (lo + hi), mu=mu)


def stationary_laplace(w, s: float, batches: int = DEFAULT_BATCHES) -> Estimate:
    """``E[exp(-s W)]`` for an analytic law (zero error) or simulated waits."""
    if s < 0:
        raise ValueError("s must be non-negative")
    if isinstance(w, WaitingTimes):
        return batch_means(np.exp(-s * w.samples), batches)
    return Estimate(float(w.laplace(s)), 0.0)


def write_waits_csv(samples, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "wait_seconds"])
        for i, w in enumerate(samples):
            writer.writerow([i, repr(float(w))])


def read_waits_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["index", "wait_seconds"]:
            raise ValueError(f"unexpected header {header!r}")
        return np.array([float(row[1]) for row in reader])
