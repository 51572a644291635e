"""Invariant suites run by ``gadq verify``.

Each check reports whether it passed and a margin: how far the measured
quantity sits inside its tolerance (negative when it fails).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List

import numpy as np

from . import channel as cc
from .channel import GadcParams
from .holevo import NoConvergenceError, holevo_fixed_point, holevo_gadc, holevo_symmetric
from .induced import (
    BinaryChannel,
    binary_channel_capacity,
    blahut_arimoto,
    bsc_capacity,
    induced_gap,
    m1_channel,
    m2_flip_probability,
)
from .queue_capacity import (
    DecoherenceModel,
    capacity_series,
    compare_arrival_distributions,
    compare_service_distributions,
    mm1_capacity_closed_form,
    queue_capacity_mc,
)
from .queueing import DEFAULT_SEED, DistributionSpec, QueueConfig, gm1_sigma, simulate_queue, stationary_laplace


@dataclass
class Check:
    name: str
    passed: bool
    margin: float
    detail: str = ""

    def to_dict(self):
        d = asdict(self)
        d["passed"] = bool(d["passed"])
        d["margin"] = float(d["margin"])
        return d


def _within(name, err, tol, detail=""):
    return Check(name, bool(err <= tol), tol - err, detail or f"max error {err:.3e} (tol {tol:.0e})")


def _random_state(rng):
    v = rng.normal(size=3)
    v *= rng.random() ** (1 / 3) / np.linalg.norm(v)
    return cc.BlochVector(*v)


def core_suite(samples=None, seed=DEFAULT_SEED) -> List[Check]:
    rng = np.random.default_rng(seed)
    tol = cc.STRUCTURAL_TOL
    errs = {"kraus completeness": 0.0, "bloch/kraus agreement": 0.0, "sigma_z covariance": 0.0, "convex decomposition": 0.0}
    for _ in range(1000):
        ch = GadcParams(rng.random(), rng.random())
        rho = cc.bloch_to_density(_random_state(rng))
        out = cc.apply_gadc_density(ch, rho).matrix
        errs["kraus completeness"] = max(errs["kraus completeness"], np.abs(cc.kraus_operators(ch).completeness() - cc.IDENTITY).max())
        via_bloch = cc.bloch_to_density(cc.apply_gadc_bloch(ch, rho.to_bloch())).matrix
        errs["bloch/kraus agreement"] = max(errs["bloch/kraus agreement"], np.abs(out - via_bloch).max())
        flipped = cc.DensityMatrix(cc.SIGMA_Z @ rho.matrix @ cc.SIGMA_Z)
        lhs = cc.apply_gadc_density(ch, flipped).matrix
        errs["sigma_z covariance"] = max(errs["sigma_z covariance"], np.abs(lhs - cc.SIGMA_Z @ out @ cc.SIGMA_Z).max())
        mix = (1 - ch.n) * cc.apply_gadc_density(GadcParams(ch.p, 0), rho).matrix + ch.n * cc.apply_gadc_density(GadcParams(ch.p, 1), rho).matrix
        errs["convex decomposition"] = max(errs["convex decomposition"], np.abs(out - mix).max())
    checks = [_within(k, v, tol) for k, v in errs.items()]
    half = cc.ebt_threshold(0.5)
    checks.append(_within("ebt threshold at n=1/2", abs(half - 2 * (math.sqrt(2) - 1)), 1e-9))
    consistent = all(
        cc.is_entanglement_breaking(GadcParams(min(cc.ebt_threshold(n) + 1e-6, 1.0), n))
        and not cc.is_entanglement_breaking(GadcParams(cc.ebt_threshold(n) - 1e-6, n))
        for n in np.linspace(0.02, 0.5, 25)
    )
    checks.append(Check("ebt predicate consistency", consistent, 0.0 if consistent else -1.0, "p* +- 1e-6 on 25 n values"))
    return checks


def _symmetric_holevo_check():
    ps = np.linspace(0, 1, 51)
    err = max(abs(holevo_gadc(GadcParams(p, 0.5)).chi - holevo_symmetric(p)) for p in ps)
    return _within("n=1/2 Holevo equals 1 - h(q)", err, 1e-6)


def holevo_suite(samples=None, seed=DEFAULT_SEED) -> List[Check]:
    checks = [_symmetric_holevo_check()]
    grid = (np.arange(20) + 0.5) / 20
    err, skipped = 0.0, 0
    for p in grid:
        for n in grid:
            ch = GadcParams(p, n)
            try:
                fp = holevo_fixed_point(ch).chi
            except NoConvergenceError:
                skipped += 1
                continue
            err = max(err, abs(fp - holevo_gadc(ch).chi))
    checks.append(_within("fixed point vs grid search", err, 1e-6, f"max error {err:.3e}; {skipped} points without a root"))
    ps = np.linspace(0, 1, 50)
    sym = max(abs(holevo_gadc(GadcParams(p, n)).chi - holevo_gadc(GadcParams(p, 1 - n)).chi) for p in ps[::5] for n in (0.1, 0.3))
    checks.append(_within("n <-> 1-n symmetry", sym, 2e-9))
    worst = 0.0
    for n in (0.0, 0.2, 0.5):
        chis = np.array([holevo_gadc(GadcParams(p, n)).chi for p in ps])
        worst = max(worst, float(np.max(np.diff(chis))))
    checks.append(_within("monotone in p", worst, 1e-8, f"largest increase {worst:.3e}"))
    return checks


def induced_suite(samples=None, seed=DEFAULT_SEED) -> List[Check]:
    checks = []
    grid = np.linspace(0, 1, 50)
    c1 = np.array([[binary_channel_capacity(m1_channel(GadcParams(p, n))).capacity for n in grid] for p in grid])
    c2 = np.array([bsc_capacity(m2_flip_probability(p)) for p in grid])
    dom = float(np.max(c1 - c2[:, None]))
    checks.append(_within("C(M2) >= C(M1)", dom, 1e-9, f"largest C(M1) - C(M2) = {dom:.3e}"))
    checks.append(_within("C(M1) symmetric in n", float(np.max(np.abs(c1 - c1[:, ::-1]))), 1e-9))
    gap_half = max(abs(induced_gap(GadcParams(p, 0.5))) for p in np.linspace(0, 1, 51))
    checks.append(_within("gap vanishes at n=1/2", gap_half, 1e-6))
    gaps = [induced_gap(GadcParams(p, n)) for p in grid if 0.05 <= p <= 0.95 for n in grid if n <= 0.4]
    smallest = min(gaps)
    checks.append(Check("gap positive for n <= 0.4", smallest > 0, smallest, f"smallest gap {smallest:.3e}"))
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(1000):
        col = rng.random(2)
        chan = BinaryChannel(np.array([col, 1 - col]))
        err = max(err, abs(blahut_arimoto(chan).capacity - binary_channel_capacity(chan).capacity))
    checks.append(_within("Blahut-Arimoto vs golden section", err, 1e-6))
    z = binary_channel_capacity(m1_channel(GadcParams(0.5, 0))).capacity
    checks.append(_within("Z-channel capacity log2(5/4)", abs(z - math.log2(1.25)), 1e-6))
    return checks


def _mc_check(name, est, target):
    err = abs(est.value - target)
    band = 3 * est.std_err
    return Check(name, bool(err <= band), band - err, f"estimate {est.value:.6g} +- {est.std_err:.2g}, target {target:.6g}")


def queue_suite(samples=1_000_000, seed=DEFAULT_SEED) -> List[Check]:
    samples = samples or 1_000_000
    mm1 = simulate_queue(QueueConfig.mm1(0.5, 1.0), samples, seed=seed)
    checks = [_mc_check("M/M/1 sojourn mean", mm1.mean(), 2.0)]
    checks.append(_mc_check("M/M/1 Laplace transform at s=1", stationary_laplace(mm1, 1.0), 1 / 3))
    arrival = DistributionSpec.deterministic(2.0)
    sol = gm1_sigma(arrival, 1.0)
    dm1 = simulate_queue(QueueConfig(arrival, DistributionSpec.exponential(1.0)), samples, seed=seed)
    checks.append(_mc_check("D/M/1 sojourn mean", dm1.mean(), sol.sojourn_mean))
    exp_sigma = gm1_sigma(DistributionSpec.exponential(2.0), 1.0).sigma
    checks.append(Check("sigma(D) < sigma(M)", sol.sigma < exp_sigma, exp_sigma - sol.sigma, f"{sol.sigma:.6f} < {exp_sigma:.6f}"))
    return checks


def capacity_suite(samples=1_000_000, seed=DEFAULT_SEED) -> List[Check]:
    samples = samples or 1_000_000
    checks = []
    norm = capacity_series(lambda s: 1.0, 0.7, DecoherenceModel(1.0))
    checks.append(_within("series normalization", abs(norm.value - 0.7), 1e-9))
    for kappa in (0.1, 1.0):
        for lam in (0.3, 0.5, 0.8):
            model = DecoherenceModel(kappa)
            mc = queue_capacity_mc(QueueConfig.mm1(lam, 1.0), model, samples, seed=seed)
            cf = mm1_capacity_closed_form(lam, 1.0, model)
            err = abs(mc.value - cf.value)
            band = 3 * math.hypot(mc.std_err, cf.std_err)
            checks.append(Check(f"MC vs closed form (lambda={lam}, kappa={kappa})", err <= band, band - err, f"{mc.value:.6g} vs {cf.value:.6g}"))
    lams = np.arange(1, 100) / 100
    curves = {k: np.array([mm1_capacity_closed_form(l, 1.0, DecoherenceModel(k)).value for l in lams]) for k in (1.0, 0.1)}
    c1 = curves[1.0]
    i1, i01 = int(np.argmax(c1)), int(np.argmax(curves[0.1]))
    checks.append(Check("interior peak (kappa=1)", 0 < i1 < len(lams) - 1, float(min(c1[i1] - c1[0], c1[i1] - c1[-1]))))
    checks.append(Check("C(0.99) < 10% of peak", c1[-1] < 0.1 * c1[i1], float(0.1 * c1[i1] - c1[-1])))
    checks.append(Check("peak moves right for slower decoherence", lams[i01] > lams[i1], float(lams[i01] - lams[i1])))
    checks.append(Check("peak higher for slower decoherence", curves[0.1][i01] > c1[i1], float(curves[0.1][i01] - c1[i1])))
    return checks


def theorems_suite(samples=1_000_000, seed=DEFAULT_SEED) -> List[Check]:
    samples = samples or 1_000_000
    checks = [_symmetric_holevo_check()]
    model = DecoherenceModel(1.0)
    ranked = compare_service_distributions(0.5, 1.0, model, [DistributionSpec.exponential(1.0), DistributionSpec.deterministic(1.0)], samples, seed)
    by_kind = {r.spec.kind.value: r.estimate for r in ranked}
    det, exp = by_kind["deterministic"], by_kind["exponential"]
    margin = det.value - exp.value - 3 * math.hypot(det.std_err, exp.std_err)
    checks.append(
        Check(
            "deterministic service is best (M/G/1)",
            bool(margin > 0),
            margin,
            f"C(M/D/1) {det.value:.6g} +- {det.std_err:.2g}, C(M/M/1) {exp.value:.6g} +- {exp.std_err:.2g}",
        )
    )
    ranked = compare_arrival_distributions(0.5, 1.0, model, [DistributionSpec.exponential(2.0), DistributionSpec.deterministic(2.0)])
    best, other = ranked
    checks.append(Check("deterministic arrivals are best (G/M/1)", best.spec.kind.value == "deterministic" and best.sigma < other.sigma, best.estimate.value - other.estimate.value))
    return checks


SUITES: Dict[str, Callable[..., List[Check]]] = {
    "core": core_suite,
    "holevo": holevo_suite,
    "induced": induced_suite,
    "queue": queue_suite,
    "capacity": capacity_suite,
    "theorems": theorems_suite,
}


def run_suites(names, samples=None, seed=DEFAULT_SEED) -> dict:
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    report = {}
    for name in names:
        report[name] = [c.to_dict() for c in SUITES[name](samples=samples, seed=seed)]
    passed = all(c["passed"] for checks in report.values() for c in checks)
    return {"passed": passed, "suites": report}
