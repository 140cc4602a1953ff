"""Bracketed scalar root finding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .base import RootError

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class RootResult:
    x: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


def solve_bracketed(f: Callable[[float], float], lo: float, hi: float,
                    tol: float = 1e-13) -> RootResult:
    """Root of ``f`` inside ``[lo, hi]`` by Brent's method.

    Requires a sign change. After convergence in ``x`` the residual
    ``|f(x)|`` must not exceed ``tol``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return RootResult(lo, 0.0, (lo, hi), 0)
    if fhi == 0:
        return RootResult(hi, 0.0, (lo, hi), 0)
    if not (math.isfinite(flo) and math.isfinite(fhi)) or flo * fhi > 0:
        raise RootError(f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    # Brent can creep in steps of its tolerance for roots far below 1 in
    # magnitude (thousands of steps seen near 1e-288), hence the generous cap
    x, info = brentq(f, lo, hi, xtol=1e-300, rtol=4 * _EPS, maxiter=10_000,
                     full_output=True, disp=False)
    if not info.converged:
        raise RootError(f"Brent iteration did not converge: {info.flag}")
    residual = abs(f(x))
    if residual > tol:
        raise RootError(f"residual {residual:.3e} exceeds tolerance {tol:.1e} at x={x!r}")
    return RootResult(float(x), float(residual), (lo, hi), int(info.iterations))
