"""Adaptive Gauss-Legendre integration.

Panel bisection with a fixed-order rule; a panel is accepted when halving
it moves the estimate by less than its share of the error budget. Known
awkward points (kinks, jump locations, integrable endpoint singularities)
are passed as breakpoints so panels never straddle them. Values may be
complex; tolerances act on the modulus.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import InvalidArgument, NumericalFailure

_ORDER = 15
# Hard cap on refinement work; reached only when rounding noise masquerades
# as structure, at which point further splitting cannot help.
_MAX_PANELS = 100_000


@lru_cache(maxsize=None)
def gauss_nodes(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of the Legendre rule on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return tuple(x.tolist()), tuple(w.tolist())


def _panel(f, a: float, b: float):
    xs, ws = gauss_nodes(_ORDER)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0.0
    for x, w in zip(xs, ws):
        total += w * f(mid + half * x)
    return half * total


def integrate(
    f: Callable[[float], complex],
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-14,
    breakpoints: tuple[float, ...] = (),
    max_depth: int = 48,
) -> complex:
    """Integral of f over [a, b] by adaptive bisection.

    Endpoint-integrable singularities are handled by depth alone: panels
    shrink geometrically toward the endpoint and the final sliver is
    accepted once max_depth is reached, by which point its contribution is
    below double precision.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise InvalidArgument("integration endpoints must be finite")
    if a == b:
        return 0.0
    if b < a:
        return -integrate(
            f, b, a, rel_tol=rel_tol, abs_tol=abs_tol,
            breakpoints=breakpoints, max_depth=max_depth,
        )
    cuts = sorted({float(c) for c in breakpoints if a < c < b})
    edges = [a, *cuts, b]
    pieces = list(zip(edges, edges[1:]))

    rough = sum(_panel(f, lo, hi) for lo, hi in pieces)
    budget = max(abs_tol, rel_tol * abs(rough))

    total = 0.0
    span = b - a
    panels = 0
    # stack entries: (lo, hi, first estimate, depth)
    stack = [(lo, hi, _panel(f, lo, hi), 0) for lo, hi in pieces]
    while stack:
        lo, hi, coarse, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid)
        right = _panel(f, mid, hi)
        fine = left + right
        if not np.isfinite(fine):
            raise NumericalFailure(f"integrand is not finite on [{lo:g}, {hi:g}]")
        panels += 2
        share = budget * (hi - lo) / span
        if abs(fine - coarse) <= share or depth >= max_depth or panels > _MAX_PANELS:
            total += fine
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total


def integrate_pv(
    numerator: Callable[[float], float],
    a: float,
    b: float,
    pole: float,
    *,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-14,
    breakpoints: tuple[float, ...] = (),
) -> float:
    """Cauchy principal value of numerator(x) / (x - pole) over [a, b].

    Taking the numerator rather than the full integrand keeps the fold
    (numerator(pole+s) - numerator(pole-s)) / s free of the 0 * inf noise
    that folding the raw integrand produces near the pole.
    """
    if not a < pole < b:
        raise InvalidArgument("principal-value pole must lie strictly inside the interval")
    h = min(pole - a, b - pole)
    if h <= 0.0 or not np.isfinite(h):
        raise NumericalFailure("degenerate principal-value window")

    def folded(s: float) -> float:
        return (numerator(pole + s) - numerator(pole - s)) / s

    # Below the cut the fold is 2 * numerator'(pole) + O(s^2); one midpoint
    # cell there avoids dividing rounding error of the difference by tiny s.
    cut = h * 6.0e-6
    core = cut * folded(0.5 * cut)
    core += integrate(folded, cut, h, rel_tol=rel_tol, abs_tol=abs_tol)

    def full(x: float) -> float:
        return numerator(x) / (x - pole)

    rest = 0.0
    if pole - a > h:
        rest += integrate(
            full, a, pole - h, rel_tol=rel_tol, abs_tol=abs_tol,
            breakpoints=breakpoints,
        )
    if b - pole > h:
        rest += integrate(
            full, pole + h, b, rel_tol=rel_tol, abs_tol=abs_tol,
            breakpoints=breakpoints,
        )
    return core + rest
