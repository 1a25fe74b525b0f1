"""Adaptive Simpson quadrature with optional breakpoints.

Densities in this package are smooth between a handful of kink times, so the
integrators below split at those kinks and refine adaptively inside each
smooth piece.
"""

from __future__ import annotations

from typing import Callable, Iterable

MAX_INTERVALS = 2**20


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-9,
    max_intervals: int = MAX_INTERVALS,
) -> float:
    """Integrate f over [a, b] to absolute tolerance tol."""
    if b <= a:
        return 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = _simpson(fa, fm, fb, b - a)
    # stack of (a, fa, m, fm, b, fb, whole, tol)
    stack = [(a, fa, m, fm, b, fb, whole, tol)]
    total = 0.0
    used = 1
    while stack:
        a, fa, m, fm, b, fb, whole, tol = stack.pop()
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = _simpson(fa, flm, fm, m - a)
        right = _simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
            continue
        used += 2
        if used > max_intervals:
            raise RuntimeError("adaptive quadrature exceeded the interval cap")
        half = 0.5 * tol
        stack.append((a, fa, lm, flm, m, fm, left, half))
        stack.append((m, fm, rm, frm, b, fb, right, half))
    return total


def integrate_piecewise(
    f: Callable[[float], float],
    a: float,
    b: float,
    breakpoints: Iterable[float] = (),
    tol: float = 1e-9,
) -> float:
    """Integrate f over [a, b], splitting at the interior breakpoints.

    Kinks of f must be listed in breakpoints so each adaptive pass sees a
    smooth integrand.
    """
    if b <= a:
        return 0.0
    cuts = sorted(t for t in breakpoints if a < t < b)
    edges = [a] + cuts + [b]
    piece_tol = tol / len(edges)
    return sum(
        adaptive_simpson(f, lo, hi, piece_tol)
        for lo, hi in zip(edges[:-1], edges[1:])
    )
