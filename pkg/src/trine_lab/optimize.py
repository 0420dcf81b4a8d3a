"""Deterministic grid sweeps and golden-section refinement."""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


def grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Points from ``lo`` to ``hi`` inclusive, spacing at most ``step``."""
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(math.ceil((hi - lo) / step - 1e-9))
    return np.linspace(lo, hi, n + 1)


def golden_section(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 200):
    """Minimize a unimodal ``f`` on ``[a, b]``.

    Returns ``(x, f(x))`` for the best point evaluated, endpoints included,
    so a minimum on the boundary is found exactly.
    """
    a, b = min(a, b), max(a, b)
    best_x, best_f = a, f(a)
    fb = f(b)
    if fb < best_f:
        best_x, best_f = b, fb
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f
