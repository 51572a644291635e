#!/usr/bin/env python3
"""Holevo information of the GADC next to two classical channels it induces.

M1 sends computational basis states; M2 sends the pair of states with Bloch
vectors (+-sqrt(1-z^2), 0, z) at z = 0 and decodes with the optimal
two-state measurement. At n = 1/2 the Holevo information equals C(M2); away
from it there is a gap, which this script tabulates.

    python demos/02_holevo_and_induced_channels.py
"""

import numpy as np

from gadq.channel import GadcParams
from gadq.holevo import holevo_fixed_point, holevo_gadc
from gadq.induced import binary_channel_capacity, blahut_arimoto, bsc_capacity, m1_channel, m2_flip_probability


def table(n, ps):
    print(f"\nn = {n}")
    print("     p      chi      C(M1)    C(M2)    chi - C(M2)   z*")
    for p in ps:
        ch = GadcParams(p, n)
        hol = holevo_gadc(ch)
        c1 = binary_channel_capacity(m1_channel(ch)).capacity
        c2 = bsc_capacity(m2_flip_probability(p))
        print(f"  {p:5.2f}  {hol.chi:.6f}  {c1:.6f}  {c2:.6f}  {hol.chi - c2:11.3e}  {hol.z_star:+.4f}")


def cross_checks():
    ch = GadcParams(0.7, 0.1)
    grid = holevo_gadc(ch)
    fp = holevo_fixed_point(ch)
    print(f"\np = 0.7, n = 0.1: grid search chi = {grid.chi:.12f}, stationarity root chi = {fp.chi:.12f}")
    z = m1_channel(GadcParams(0.5, 0.0))
    print(
        f"Z-channel (p = 0.5, n = 0): golden section {binary_channel_capacity(z).capacity:.12f}, "
        f"Blahut-Arimoto {blahut_arimoto(z).capacity:.12f}, log2(5/4) = {np.log2(1.25):.12f}"
    )


if __name__ == "__main__":
    ps = [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0]
    table(0.5, ps)
    table(0.2, ps)
    table(0.0, ps)
    cross_checks()
