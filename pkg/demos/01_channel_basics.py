#!/usr/bin/env python3
"""Walk through the generalized amplitude damping channel on a few states.

Prints what the channel does to the Bloch ball, checks the Kraus
representation against the affine Bloch map, and maps out where the channel
becomes entanglement breaking.

    python demos/01_channel_basics.py
"""

import numpy as np

from gadq.channel import (
    BlochVector,
    GadcParams,
    apply_gadc_bloch,
    apply_gadc_density,
    bloch_to_density,
    ebt_threshold,
    is_entanglement_breaking,
    kraus_operators,
)


def show_contraction(p, n):
    ch = GadcParams(p, n)
    print(f"\np = {p}, n = {n}")
    for label, r in [("|0>", (0, 0, 1)), ("|1>", (0, 0, -1)), ("|+>", (1, 0, 0)), ("I/2", (0, 0, 0))]:
        out = apply_gadc_bloch(ch, BlochVector(*r)).as_array()
        print(f"  {label:>4} -> ({out[0]:+.4f}, {out[1]:+.4f}, {out[2]:+.4f})")
    # fixed point of the z-map: (1-p)z + p(1-2n) = z
    print(f"  fixed point on the z axis: {1 - 2 * n:+.4f}")


def check_kraus(p, n, trials=200, seed=1):
    rng = np.random.default_rng(seed)
    ch = GadcParams(p, n)
    k = kraus_operators(ch)
    worst = 0.0
    for _ in range(trials):
        v = rng.normal(size=3)
        v *= rng.random() / np.linalg.norm(v)
        r = BlochVector(*v)
        lhs = apply_gadc_density(ch, bloch_to_density(r)).matrix
        rhs = bloch_to_density(apply_gadc_bloch(ch, r)).matrix
        worst = max(worst, np.abs(lhs - rhs).max())
    completeness = np.abs(k.completeness() - np.eye(2)).max()
    print(f"\nKraus completeness error {completeness:.1e}; Kraus vs Bloch map over {trials} states: {worst:.1e}")


def ebt_map():
    print("\nentanglement breaking threshold p*(n):")
    for n in (0.05, 0.1, 0.2, 0.3, 0.4, 0.5):
        p_star = ebt_threshold(n)
        below = is_entanglement_breaking(GadcParams(p_star - 1e-3, n))
        above = is_entanglement_breaking(GadcParams(min(p_star + 1e-3, 1.0), n))
        print(f"  n = {n:.2f}: p* = {p_star:.6f}   EB just below: {below}, just above: {above}")
    print("  (n near 0 or 1 pushes p* to 1: pure amplitude damping is never EB for p < 1)")


if __name__ == "__main__":
    show_contraction(0.3, 0.0)
    show_contraction(0.3, 0.5)
    show_contraction(0.9, 0.2)
    check_kraus(0.37, 0.21)
    ebt_map()
