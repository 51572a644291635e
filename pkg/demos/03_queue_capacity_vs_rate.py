#!/usr/bin/env python3
"""Capacity of an M/M/1 queue-channel as the qubit rate lambda grows.

Sending faster means more qubits per second but longer sojourns, and a qubit
that sits in the buffer for W seconds decoheres with 1 - exp(-kappa W). The
curve therefore has an interior peak that moves with kappa. The closed-form
series is checked against a short simulation at a few rates.

    python demos/03_queue_capacity_vs_rate.py
"""

import numpy as np

from gadq.queue_capacity import DecoherenceModel, mm1_capacity_closed_form, optimize_lambda, queue_capacity_mc
from gadq.queueing import QueueConfig


def curve(kappa, lams):
    model = DecoherenceModel(kappa)
    return np.array([mm1_capacity_closed_form(x, 1.0, model).value for x in lams])


def ascii_plot(lams, values, width=50):
    top = values.max()
    for x, v in zip(lams[::4], values[::4]):
        print(f"  {x:4.2f} {'#' * int(round(width * v / top)):<{width}} {v:.4f}")


if __name__ == "__main__":
    lams = np.arange(1, 100) / 100
    for kappa in (1.0, 0.1):
        values = curve(kappa, lams)
        opt = optimize_lambda(1.0, DecoherenceModel(kappa))
        print(f"\nkappa = {kappa}: capacity (bits/s) against lambda, mu = 1")
        ascii_plot(lams, values)
        print(f"  optimum lambda* = {opt.lambda_star:.5f}, C* = {opt.capacity_star:.6f}; C(0.99) = {values[-1]:.5f}")

    print("\nclosed form vs simulation (2e5 qubits, kappa = 1):")
    model = DecoherenceModel(1.0)
    for lam in (0.3, 0.5, 0.8):
        cf = mm1_capacity_closed_form(lam, 1.0, model).value
        mc = queue_capacity_mc(QueueConfig.mm1(lam, 1.0), model, 200_000, seed=7)
        print(f"  lambda = {lam}: series {cf:.6f}   simulation {mc.value:.6f} +- {mc.std_err:.6f}")
