"""Scalar maximization helpers shared by the capacity routines."""

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(fun, a, b, tol=1e-9):
    """Maximize ``fun`` on ``[a, b]`` by golden-section search.

    Shrinks the bracket until its width is below ``tol``; returns
    ``(x, fun(x))`` for the best point evaluated, endpoints included.
    """
    best_x, best_f = a, fun(a)
    fb = fun(b)
    if fb > best_f:
        best_x, best_f = b, fb

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def grid_then_golden(fun, grid, tol=1e-9, vectorized=False):
    """Dense-grid argmax followed by golden-section refinement.

    The grid guards against local maxima; refinement happens on the two
    grid cells around the best grid point. Ties on the grid go to the
    smallest abscissa.
    """
    grid = np.asarray(grid, dtype=float)
    if vectorized:
        values = np.asarray(fun(grid), dtype=float)
    else:
        values = np.array([fun(float(x)) for x in grid])
    i = int(np.argmax(values))  # first maximal index
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    x, fx = golden_section_max(lambda t: float(fun(t)), float(lo), float(hi), tol)
    if values[i] >= fx:
        return float(grid[i]), float(values[i])
    return x, fx
