"""Optimal apex offsets for the half-cone ratio problems, plus minimality checks.

Each ratio objective is studied in the flat limit b -> 0+ with a > 1; setting
its derivative to zero gives a transcendental equation in a, solved here by a
bracketed method on (1 + 1e-9, 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .base import DEFAULT_TOL, ConeGeom, DomainError, ToleranceConfig
from .cone import cone_area, cone_mean_width
from .elliptic import eta, xi
from .halfcone import (arccsc, arcsec, instantaneous_ratios, ratio_ar_addendum_limit,
                       ratio_ar_lateral_limit, ratio_ar_total_limit, ratio_mw_limit)
from .quadrature import arcsine_integral
from .roots import RootResult, solve_bracketed

__all__ = [
    "RootResult", "Optimum", "solve_bracketed", "solve_ar_lateral", "solve_ar_total",
    "solve_ar_addendum", "solve_mw", "solve", "PROBLEMS", "ar_partial_a",
    "fd_minimality", "sanity_sweep",
]

BRACKET = (1.0 + 1e-9, 3.0)


@dataclass(frozen=True)
class Optimum:
    problem: str
    a_star: float
    infimum: float
    root: RootResult
    cross_check: float | None = None  # a_star via the xi/eta reduction

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "a_star": self.a_star,
            "infimum": self.infimum,
            "residual": self.root.residual,
            "bracket": list(self.root.bracket),
            "iterations": self.root.iterations,
            "cross_check": self.cross_check,
        }


def _lateral_equation(a):
    # pi/(2a) sqrt(a^2-1) = arccsc(a)
    return math.pi / (2 * a) * math.sqrt(a * a - 1) - arccsc(a)


def _total_equation(a):
    # (pi/a)(a - sqrt(a^2-1)) = arcsec(a)
    return math.pi / a * (a - math.sqrt(a * a - 1)) - arcsec(a)


def _mw_equation(a):
    return math.sqrt(a * a - 1) * (2 + math.pi * math.sqrt(a * a + 1)) / (2 * a * a) - 1 - arccsc(a)


def solve_ar_lateral(tol: float = 1e-13) -> Optimum:
    root = solve_bracketed(_lateral_equation, *BRACKET, tol=tol)
    # x = pi sqrt(a^2-1)/(2a) solves 2x = pi cos x, and sin x = 1/a
    return Optimum("ar-lateral", root.x, ratio_ar_lateral_limit(root.x), root,
                   1.0 / math.sin(xi(2.0 / math.pi)))


def solve_ar_total(tol: float = 1e-13) -> Optimum:
    root = solve_bracketed(_total_equation, *BRACKET, tol=tol)
    # w = pi - x with cos x = 1/a solves w = pi sin w
    return Optimum("ar-total", root.x, ratio_ar_total_limit(root.x), root,
                   -1.0 / math.cos(eta(1.0 / math.pi)))


def solve_ar_addendum(tol: float = 1e-13) -> Optimum:
    # the stationarity equation coincides with the lateral one
    root = solve_bracketed(_lateral_equation, *BRACKET, tol=tol)
    return Optimum("ar-addendum", root.x, ratio_ar_addendum_limit(root.x), root,
                   1.0 / math.sin(xi(2.0 / math.pi)))


def solve_mw(tol: float = 1e-13) -> Optimum:
    root = solve_bracketed(_mw_equation, *BRACKET, tol=tol)
    return Optimum("mw", root.x, ratio_mw_limit(root.x), root)


PROBLEMS: dict[str, tuple[Callable[..., Optimum], Callable[[float], float]]] = {
    "ar-lateral": (solve_ar_lateral, ratio_ar_lateral_limit),
    "ar-total": (solve_ar_total, ratio_ar_total_limit),
    "ar-addendum": (solve_ar_addendum, ratio_ar_addendum_limit),
    "mw": (solve_mw, ratio_mw_limit),
}


def solve(problem: str) -> Optimum:
    try:
        solver, _ = PROBLEMS[problem]
    except KeyError:
        raise DomainError(f"unknown problem {problem!r}; choose from {sorted(PROBLEMS)}") from None
    return solver()


def ar_partial_a(g: ConeGeom, order: int, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """First or second a-derivative of the lateral cone area, by quadrature."""
    a, b = g.a, g.b
    if order == 1:
        def f(v):
            w = 1 - a * v
            return -v * w / math.sqrt(w * w + b * b)
    elif order == 2:
        def f(v):
            w = 1 - a * v
            return b * b * v * v / (w * w + b * b) ** 1.5
    else:
        raise DomainError(f"order must be 1 or 2, got {order}")
    return arcsine_integral(f, -1.0, 1.0, (1.0 / a,) if a > 1 else (), tol)


def fd_minimality(b: float, measure: str = "area", h: float = 1e-4) -> dict:
    """Finite differences of a cone measure in a at a = 0, fixed b (hence volume).

    Reflection in the xz-plane maps apex offset -a onto +a, so f(-h) = f(h)
    and the central difference is ``2 (f(h) - f(0)) / h^2``.  A stationary
    point shows up as a forward difference of size O(h).
    """
    if measure == "area":
        f = lambda a: cone_area(ConeGeom(a, b))[0]
    elif measure == "mean_width":
        f = lambda a: cone_mean_width(ConeGeom(a, b))
    else:
        raise DomainError(f"measure must be 'area' or 'mean_width', got {measure!r}")
    f0, fh = f(0.0), f(h)
    return {
        "forward_first": (fh - f0) / h,
        "second": 2 * (fh - f0) / (h * h),
    }


def sanity_sweep(n_a: int = 50, n_b: int = 50, a_max: float = 5.0, b_min: float = 1e-3,
                 b_max: float = 5.0, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Smallest finite-b ratio of each objective over an (a, b) grid.

    Evidence, not proof, that nothing undercuts the b -> 0+ infima.
    """
    a_vals = np.linspace(a_max / n_a, a_max, n_a)
    b_vals = np.geomspace(b_min, b_max, n_b)
    best = {k: (math.inf, None) for k in PROBLEMS}
    for a in a_vals:
        for b in b_vals:
            for key, r in instantaneous_ratios(ConeGeom(float(a), float(b)), tol).items():
                key = key.replace("_", "-")
                if r < best[key][0]:
                    best[key] = (r, (float(a), float(b)))
    return {k: {"min_ratio": v[0], "at": v[1]} for k, v in best.items()}
