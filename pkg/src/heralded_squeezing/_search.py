"""Deterministic grid scans with golden-section refinement."""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section(f, a: float, b: float, tol: float = 1e-8) -> float:
    """Minimize a unimodal ``f`` on ``[a, b]``; returns the midpoint of the final bracket."""
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        # prefer the upper point on ties
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def argmin_last(values: np.ndarray) -> int:
    """Index of the minimum of a 1-D array, taking the last one on ties; NaN is ignored."""
    values = np.where(np.isnan(values), np.inf, values)
    rev = values[::-1]
    return values.size - 1 - int(np.argmin(rev))


def grid_then_golden(f_vec, lo: float, hi: float, step: float, tol: float = 1e-8):
    """Minimize ``f_vec`` (vectorized) on ``[lo, hi]``: grid with ``step``, then refine the best cell.

    Returns ``(x, f(x))``.
    """
    grid = np.arange(lo, hi + 0.5 * step, step)
    grid[-1] = min(grid[-1], hi)
    values = np.asarray(f_vec(grid), dtype=float)
    i = argmin_last(values)
    if not np.isfinite(values[i]):
        raise ValueError("objective is undefined on the whole grid")
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]

    def scalar(x):
        v = float(np.asarray(f_vec(np.array([x])))[0])
        return v if np.isfinite(v) else np.inf

    x = golden_section(scalar, a, b, tol)
    fx = scalar(x)
    if fx > values[i]:
        x, fx = float(grid[i]), float(values[i])
    return x, fx


def coordinate_refine(f, x0, lower, upper, width, tol: float = 1e-6, sweeps: int = 30):
    """Coordinate-wise golden-section minimization of scalar ``f(x)`` from ``x0``.

    Each coordinate is searched in ``x_i +/- width_i`` clipped to the bounds;
    the widths shrink as sweeps stop moving the point.
    """
    x = np.array(x0, dtype=float)
    width = np.array(width, dtype=float)
    fx = f(x)
    for _ in range(sweeps):
        moved = 0.0
        for i in range(x.size):
            a = max(lower[i], x[i] - width[i])
            b = min(upper[i], x[i] + width[i])

            def along(v, i=i):
                y = x.copy()
                y[i] = v
                return f(y)

            v = golden_section(along, a, b, tol)
            fv = along(v)
            if fv <= fx:
                moved = max(moved, abs(v - x[i]))
                x[i], fx = v, fv
        width = np.maximum(np.minimum(width, 4 * moved), 10 * tol)
        if moved < tol:
            break
    return x, fx
