#!/usr/bin/env python3
"""Which preparation and service laws give the most capacity?

For a fixed mean, the capacity is a positive combination of the sojourn
Laplace transform E[exp(-kappa k W)], k = 1, 2, ..., so a law wins if it
raises that transform at every s.

Arrivals (G/M/1): the sojourn is exponential with rate mu(1 - sigma), and
regular arrivals give the smallest sigma, so deterministic preparation wins
for every kappa.

Service (M/G/1): the sojourn includes the qubit's own service time. Regular
service shortens the queueing delay, but it also removes the short services
that let a qubit leave almost untouched. Which effect dominates depends on
kappa, and the table below shows the ranking flip.

    python demos/04_which_distributions_are_best.py
"""

from gadq.queue_capacity import (
    DecoherenceModel,
    compare_arrival_distributions,
    compare_service_distributions,
)
from gadq.queueing import DistributionSpec

LAM, MU = 0.5, 1.0


def arrivals(kappa):
    specs = [
        DistributionSpec.exponential(1 / LAM),
        DistributionSpec.gamma(1 / LAM, 4.0),
        DistributionSpec.uniform(1 / LAM, 0.5),
        DistributionSpec.deterministic(1 / LAM),
    ]
    print(f"\nG/M/1, kappa = {kappa}")
    for r in compare_arrival_distributions(LAM, MU, DecoherenceModel(kappa), specs):
        print(f"  {r.spec.kind.value:<13} sigma = {r.sigma:.6f}   C = {r.estimate.value:.6f}")


def services(kappa, n=300_000):
    specs = [
        DistributionSpec.exponential(1 / MU),
        DistributionSpec.gamma(1 / MU, 4.0),
        DistributionSpec.deterministic(1 / MU),
    ]
    print(f"\nM/G/1, kappa = {kappa} (simulation, {n} qubits, common random numbers)")
    for r in compare_service_distributions(LAM, MU, DecoherenceModel(kappa), specs, n=n, seed=3):
        print(f"  {r.spec.kind.value:<13} C = {r.estimate.value:.6f} +- {r.estimate.std_err:.6f}")


if __name__ == "__main__":
    for kappa in (0.1, 1.0):
        arrivals(kappa)
    for kappa in (0.1, 1.0):
        services(kappa)
