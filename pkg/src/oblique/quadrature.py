"""Adaptive 1-D quadrature and averages over the unit sphere.

Every singular integrand in this package carries the weight
``1/sqrt(1 - v^2)`` on a subinterval of [-1, 1].  Integrands flagged as
singular are passed *without* that factor; the substitution ``v = sin t``
absorbs it exactly (``dv / sqrt(1 - v^2) = dt``), leaving a regular
integrand on ``[asin(lower), asin(upper)]``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _si
from scipy.spatial.transform import Rotation
from scipy.stats import qmc

from .base import DEFAULT_TOL, DomainError, QuadratureError, ToleranceConfig


@dataclass(frozen=True)
class Integrand1D:
    """A scalar integrand on ``[lower, upper]``.

    If either flag in ``singular_endpoints`` is set, ``func`` is the regular
    factor ``g`` of ``g(v) / sqrt(1 - v^2)`` and the interval must lie in
    [-1, 1].  ``breakpoints`` lists interior points where ``func`` is kinked
    or sharply peaked.
    """

    func: Callable[[float], float]
    lower: float
    upper: float
    singular_endpoints: tuple[bool, bool] = (False, False)
    breakpoints: Sequence[float] = ()

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"need lower < upper, got [{self.lower}, {self.upper}]")
        if self.weighted and (self.lower < -1 or self.upper > 1):
            raise DomainError("arcsine-weighted integrand must live inside [-1, 1]")

    @property
    def weighted(self) -> bool:
        return any(self.singular_endpoints)


def _quad(func, lo, hi, points, tol: ToleranceConfig):
    inner = [p for p in points if lo < p < hi]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _si.IntegrationWarning)
        value, err, info, *msg = _si.quad(
            func, lo, hi, epsabs=tol.quad_abs, epsrel=tol.quad_rel,
            limit=tol.max_subdivisions, points=sorted(inner) or None, full_output=1)
    return value, err, info, msg


def integrate_with_error(f: Integrand1D, tol: ToleranceConfig = DEFAULT_TOL):
    """Integral of ``f`` and QUADPACK's error estimate.

    Raises :class:`QuadratureError` when the estimate exceeds the target
    ``max(quad_abs, quad_rel * |value|)`` by more than a factor of 10
    (QUADPACK stops slightly early when roundoff dominates).
    """
    if f.weighted:
        func = f.func
        lo, hi = math.asin(f.lower), math.asin(f.upper)
        points = [math.asin(p) for p in f.breakpoints if -1 < p < 1]
        value, err, info, msg = _quad(lambda t: func(math.sin(t)), lo, hi, points, tol)
    else:
        value, err, info, msg = _quad(f.func, f.lower, f.upper, list(f.breakpoints), tol)
    target = max(tol.quad_abs, tol.quad_rel * abs(value))
    if not (math.isfinite(value) and math.isfinite(err)) or err > 10 * target:
        reason = msg[0] if msg else "error estimate above target"
        raise QuadratureError(
            f"quadrature did not converge (estimate {value!r}, error {err:.3e}, "
            f"target {target:.1e}): {reason}", value, err)
    return value, err


def integrate(f: Integrand1D, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    return integrate_with_error(f, tol)[0]


def arcsine_integral(g: Callable[[float], float], lower: float = -1.0, upper: float = 1.0,
                     breakpoints: Sequence[float] = (), tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``int_lower^upper g(v) / sqrt(1 - v^2) dv``."""
    return integrate(Integrand1D(g, lower, upper, (True, True), tuple(breakpoints)), tol)


# -- sphere ----------------------------------------------------------------

_CHUNK = 1 << 16

# Fixed generic orientation of the latitude-longitude grid.  Support functions
# of rotationally symmetric bodies have kinks along latitude circles of the
# body frame; tilting the grid keeps those kinks transversal to grid lines.
_GRID_ROTATION = Rotation.from_euler("zyx", [0.3, 0.7, 0.2]).as_matrix()


def _validate_count(name, n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def sphere_mean_mc(h: Callable[[np.ndarray], np.ndarray], n: int, seed: int = 0):
    """Monte Carlo average of ``h`` over the unit sphere.

    Directions come in antithetic pairs ``(u, -u)``; ``n`` counts pairs.
    Chunk ``i`` draws from the ``i``-th child of ``SeedSequence(seed)``, so
    results depend on ``(seed, n)`` only.  Returns ``(mean, standard_error)``.
    """
    n = _validate_count("n", n)
    children = np.random.SeedSequence(seed).spawn((n + _CHUNK - 1) // _CHUNK)
    total = 0.0
    total_sq = 0.0
    for i, child in enumerate(children):
        m = min(_CHUNK, n - i * _CHUNK)
        u = np.random.default_rng(child).standard_normal((m, 3))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        pair = 0.5 * (h(u) + h(-u))
        total += pair.sum()
        total_sq += np.dot(pair, pair)
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0) * n / max(n - 1, 1)
    return float(mean), float(math.sqrt(var / n))


def sphere_mean_rqmc(h: Callable[[np.ndarray], np.ndarray], n: int, seed: int = 0,
                     replicates: int = 16):
    """Randomized quasi-Monte Carlo average of ``h`` over the unit sphere.

    Each replicate is an independently scrambled Sobol set of ``2**k`` points,
    ``2**k`` the largest power of two not above ``n // replicates``, mapped to the sphere by the equal-area map (z, phi) = (1 - 2x, 2 pi y)
    and used in antithetic pairs.  The error is the standard error of the
    replicate means.  Returns ``(mean, standard_error)``.
    """
    n = _validate_count("n", n)
    replicates = _validate_count("replicates", replicates)
    if replicates < 2 or n < 2 * replicates:
        raise DomainError("rqmc needs at least 2 replicates of 2 points each")
    k = (n // replicates).bit_length() - 1
    means = np.empty(replicates)
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(replicates)):
        x = qmc.Sobol(2, scramble=True, seed=np.random.default_rng(child)).random_base2(k)
        z = 1.0 - 2.0 * x[:, 0]
        phi = 2.0 * math.pi * x[:, 1]
        r = np.sqrt(np.maximum(0.0, (1.0 - z) * (1.0 + z)))
        u = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
        means[i] = 0.5 * (h(u).mean() + h(-u).mean())
    return float(means.mean()), float(means.std(ddof=1) / math.sqrt(replicates))


@lru_cache(maxsize=8)
def _theta_rule(n_theta: int):
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * math.pi * (x + 1.0)
    return theta, 0.5 * math.pi * w * np.sin(theta)


def _grid_mean(h, n_theta, n_phi):
    theta, w = _theta_rule(n_theta)
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    cp, sp = np.cos(phi), np.sin(phi)
    total = 0.0
    rows = max(1, (1 << 19) // n_phi)
    for i in range(0, n_theta, rows):
        t = theta[i:i + rows, None]
        st = np.sin(t)
        u = np.stack(np.broadcast_arrays(st * cp, st * sp, np.cos(t)), axis=-1)
        u = u @ _GRID_ROTATION.T
        vals = h(u.reshape(-1, 3)).reshape(u.shape[:2])
        total += float(np.dot(w[i:i + rows], vals.mean(axis=1)))
    return 0.5 * total


def sphere_mean_grid(h: Callable[[np.ndarray], np.ndarray], n_theta: int = 2048,
                     n_phi: int = 4096):
    """Deterministic average of ``h`` over the unit sphere.

    Gauss-Legendre in colatitude, midpoint in longitude, on a tilted grid.
    The error estimate is the change against a half-resolution grid.
    """
    n_theta = _validate_count("n_theta", n_theta)
    n_phi = _validate_count("n_phi", n_phi)
    fine = _grid_mean(h, n_theta, n_phi)
    coarse = _grid_mean(h, max(1, n_theta // 2), max(1, n_phi // 2))
    return fine, abs(fine - coarse)


def integrate_sphere(h: Callable[[np.ndarray], np.ndarray], method: str = "monte_carlo",
                     *, n: int | None = None, seed: int = 0, n_theta: int | None = None,
                     n_phi: int | None = None, tol: ToleranceConfig = DEFAULT_TOL):
    """Normalized spherical average ``(1/4 pi) int h dsigma`` with an error estimate.

    ``h`` maps an ``(m, 3)`` array of unit vectors to ``m`` values.
    """
    if method in ("monte_carlo", "mc"):
        return sphere_mean_mc(h, tol.mc_samples if n is None else n, seed)
    if method == "rqmc":
        return sphere_mean_rqmc(h, tol.mc_samples if n is None else n, seed)
    if method in ("lat_long_grid", "grid"):
        return sphere_mean_grid(h, n_theta or tol.grid_theta, n_phi or tol.grid_phi)
    raise DomainError(f"unknown sphere method {method!r}")
