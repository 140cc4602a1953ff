"""Independent checks of the closed forms.

Three routes, none of which shares code with the closed forms:

* parametric-surface quadrature: fundamental forms of the ruled lateral
  surface, obtained by differentiating the parametrization by hand, and
  integrated numerically;
* support functions: mean width = 2 x the spherical average of h(u);
* Monte Carlo volumes by rejection sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .base import DEFAULT_TOL, ConeGeom, CylinderGeom, DomainError, ToleranceConfig
from .quadrature import Integrand1D, integrate, integrate_sphere

__all__ = [
    "FundamentalForms", "forms_at", "surface_integrals", "edge_integral",
    "SupportBody", "support_function", "support_by_sampling", "mw_oracle",
    "volume_mc", "halfcylinder_symmetry_check", "hull_generators",
]

# -- fundamental forms ---------------------------------------------------------


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    normal: tuple[float, float, float]
    r_v_norm: float

    @property
    def area_element(self) -> float:
        return math.sqrt(max(self.E * self.G - self.F * self.F, 0.0))

    @property
    def mean_curvature(self) -> float:
        det = self.E * self.G - self.F * self.F
        return (self.E * self.N - 2 * self.F * self.M + self.G * self.L) / (2 * det)


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def forms_at(g, u: float, v: float) -> FundamentalForms:
    """First and second fundamental forms of the lateral surface (x >= 0 half).

    Cylinder: ``(sqrt(1-v^2), a u + v, b u)``.
    Cone: ``((1-u) sqrt(1-v^2), a u + (1-u) v, b u)``.
    The normal is ``-(r_u x r_v)/|r_u x r_v|`` (outward) and the second form
    uses ``L = r_u . N_u = -r_uu . N`` and likewise for M, N.
    """
    if not -1 < v < 1:
        raise DomainError(f"v must lie in (-1, 1), got {v}")
    a, b = g.a, g.b
    s = math.sqrt((1 - v) * (1 + v))
    if isinstance(g, CylinderGeom):
        if not 0 <= u <= 1:
            raise DomainError(f"u must lie in [0, 1], got {u}")
        ru = (0.0, a, b)
        rv = (-v / s, 1.0, 0.0)
        ruu = (0.0, 0.0, 0.0)
        ruv = (0.0, 0.0, 0.0)
        rvv = (-1.0 / s ** 3, 0.0, 0.0)
    elif isinstance(g, ConeGeom):
        if not 0 <= u < 1:
            raise DomainError(f"u must lie in [0, 1), got {u}")
        w = 1.0 - u
        ru = (-s, a - v, b)
        rv = (-w * v / s, w, 0.0)
        ruu = (0.0, 0.0, 0.0)
        ruv = (v / s, -1.0, 0.0)
        rvv = (-w / s ** 3, 0.0, 0.0)
    else:
        raise DomainError(f"forms_at needs a CylinderGeom or ConeGeom, got {type(g).__name__}")
    c = _cross(ru, rv)
    norm = math.sqrt(_dot(c, c))
    n = (-c[0] / norm, -c[1] / norm, -c[2] / norm)
    return FundamentalForms(
        E=_dot(ru, ru), F=_dot(ru, rv), G=_dot(rv, rv),
        L=-_dot(ruu, n), M=-_dot(ruv, n), N=-_dot(rvv, n),
        normal=n, r_v_norm=math.sqrt(_dot(rv, rv)),
    )


# u-dependence of both integrands is a polynomial of degree <= 1, so this rule
# is exact in u; only the v-direction needs adaptivity.
_U_NODES, _U_WEIGHTS = np.polynomial.legendre.leggauss(6)
_U_NODES = 0.5 * (_U_NODES + 1.0)
_U_WEIGHTS = 0.5 * _U_WEIGHTS


def _v_integral(fn: Callable[[float], float], lo: float, hi: float, breakpoints,
                tol: ToleranceConfig) -> float:
    # v = sin t; dv = cos t dt.  Integrate in t so the 1/sqrt(1-v^2) blow-up of
    # the forms never reaches the integrator.
    t_lo, t_hi = math.asin(lo), math.asin(hi)
    t_pts = tuple(math.asin(p) for p in breakpoints if lo < p < hi)

    def in_t(t):
        v = math.sin(t)
        if not -1 < v < 1:
            return 0.0
        return fn(v) * math.cos(t)

    return integrate(Integrand1D(in_t, t_lo, t_hi, breakpoints=t_pts), tol)


def _breaks(g):
    return (1.0 / g.a,) if isinstance(g, ConeGeom) and g.a > 1 else ()


def surface_integrals(g, v_range=(-1.0, 1.0), tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Lateral area and integrated mean curvature from the fundamental forms.

    Integrates over ``v_range`` and both halves x >= 0, x <= 0 (factor 2).
    """
    area = 0.0
    imc = 0.0
    for u, w in zip(_U_NODES, _U_WEIGHTS):
        def da(v, u=u):
            return forms_at(g, u, v).area_element

        def dh(v, u=u):
            f = forms_at(g, u, v)
            return f.mean_curvature * f.area_element

        area += w * _v_integral(da, *v_range, _breaks(g), tol)
        imc += w * _v_integral(dh, *v_range, _breaks(g), tol)
    return {"area_lateral": 2 * area, "imc": 2 * imc}


def _angle(n1, n2) -> float:
    c = _cross(n1, n2)
    return math.atan2(math.sqrt(_dot(c, c)), _dot(n1, n2))


def edge_integral(g, v_range=(-1.0, 1.0), tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Sum of dihedral-angle integrals along the flat-face edges of the lateral surface.

    Cylinder: bottom (u=0) and top (u=1) circles; cone: base circle only.
    Both x-halves are included.
    """
    edges = [(0.0, (0.0, 0.0, -1.0))]
    if isinstance(g, CylinderGeom):
        edges.append((1.0, (0.0, 0.0, 1.0)))
    total = 0.0
    for u, face in edges:
        def fn(v, u=u, face=face):
            f = forms_at(g, u, v)
            return _angle(f.normal, face) * f.r_v_norm
        total += _v_integral(fn, *v_range, _breaks(g), tol)
    return 2 * total


# -- support functions ---------------------------------------------------------

KINDS = ("cylinder", "cone", "halfcone", "halfcylinder")


@dataclass(frozen=True)
class SupportBody:
    """A convex body described by its support function.

    ``side`` is required for the split bodies: ``"smaller"`` is the piece
    over the half-disk y >= 0, ``"larger"`` over y <= 0.
    """

    kind: str
    a: float
    b: float
    side: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind.startswith("half") and self.side not in ("smaller", "larger"):
            raise DomainError("split bodies need side='smaller' or 'larger'")
        (CylinderGeom if "cylinder" in self.kind else ConeGeom)(self.a, self.b)


def _half_disk_support(ux, uy, sign):
    return np.where(sign * uy >= 0, np.hypot(ux, uy), np.abs(ux))


def support_function(body: SupportBody) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized h(u) = max over the body of u . p, for rows u of an (m, 3) array."""
    a, b = body.a, body.b
    sign = 1.0 if body.side == "smaller" else -1.0

    def h(u):
        ux, uy, uz = u[..., 0], u[..., 1], u[..., 2]
        top = a * uy + b * uz
        if body.kind == "cylinder":
            return np.hypot(ux, uy) + np.maximum(top, 0.0)
        if body.kind == "cone":
            return np.maximum(np.hypot(ux, uy), top)
        disk = _half_disk_support(ux, uy, sign)
        if body.kind == "halfcone":
            return np.maximum(disk, top)
        return disk + np.maximum(top, 0.0)

    return h


def hull_generators(body: SupportBody, n: int = 100_000) -> np.ndarray:
    """Points whose convex hull is the body: sampled base boundary plus apex/top copy."""
    k = max(n // 2, 2)
    if body.kind in ("cylinder", "cone"):
        th = np.linspace(0.0, 2 * math.pi, k, endpoint=False)
        base = np.column_stack([np.cos(th), np.sin(th), np.zeros(k)])
    else:
        sign = 1.0 if body.side == "smaller" else -1.0
        th = np.linspace(0.0, math.pi, k)
        arc = np.column_stack([np.cos(th), sign * np.sin(th), np.zeros(k)])
        base = np.vstack([arc, [[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]])
    shift = np.array([0.0, body.a, body.b])
    if "cylinder" in body.kind:
        return np.vstack([base, base + shift])
    return np.vstack([base, shift])


def support_by_sampling(body: SupportBody, directions: np.ndarray, n: int = 100_000) -> np.ndarray:
    """Support values as the max of u . p over sampled hull generators."""
    pts = hull_generators(body, n)
    return np.max(directions @ pts.T, axis=1)


def mw_oracle(body: SupportBody, method: str = "monte_carlo", n: int | None = None,
              seed: int = 0, tol: ToleranceConfig = DEFAULT_TOL):
    """Mean width as twice the spherical mean of the support function.

    ``method`` is any of the ``integrate_sphere`` methods.  Returns
    ``(value, error_estimate)``; for the sampling methods the estimate is one
    standard error.
    """
    mean, err = integrate_sphere(support_function(body), method, n=n, seed=seed, tol=tol)
    return 2 * mean, 2 * err


# -- Monte Carlo volume ----------------------------------------------------------

_VOL_CHUNK = 1 << 16


def _membership(body: SupportBody, p: np.ndarray) -> np.ndarray:
    a, b = body.a, body.b
    x, y, z = p[:, 0], p[:, 1], p[:, 2]
    t = z / b
    if "cylinder" in body.kind:
        inside = x * x + (y - a * t) ** 2 <= 1.0
    else:
        inside = x * x + (y - a * t) ** 2 <= (1.0 - t) ** 2
    if body.kind.startswith("half"):
        # cut plane -b y + a z = 0; the smaller piece lies on its y >= 0 side
        s = b * y - a * z
        inside &= (s >= 0) if body.side == "smaller" else (s <= 0)
    return inside


def volume_mc(body: SupportBody, n: int = 1_000_000, seed: int = 0):
    """Rejection-sampling volume in the bounding box; ``(value, standard_error)``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    lo = np.array([-1.0, -1.0, 0.0])
    hi = np.array([1.0, 1.0 + body.a, body.b])
    box = float(np.prod(hi - lo))
    hits = 0
    children = np.random.SeedSequence(seed).spawn((n + _VOL_CHUNK - 1) // _VOL_CHUNK)
    for i, child in enumerate(children):
        m = min(_VOL_CHUNK, n - i * _VOL_CHUNK)
        p = lo + (hi - lo) * np.random.default_rng(child).random((m, 3))
        hits += int(np.count_nonzero(_membership(body, p)))
    frac = hits / n
    return box * frac, box * math.sqrt(frac * (1 - frac) / n)


def halfcylinder_symmetry_check(g: CylinderGeom, n: int = 1_000_000, seed: int = 0,
                                sigmas: float = 3.0) -> dict:
    """Compare MC volume and mean width of the two half-cylinders.

    The halves are cut by the plane containing the axis and the x-direction.
    Independent streams are used for the two halves.
    """
    report = {"a": g.a, "b": g.b}
    for name, fn in (("volume", lambda bd, s: volume_mc(bd, n, s)),
                     ("mean_width", lambda bd, s: mw_oracle(bd, "monte_carlo", n, s))):
        v1, e1 = fn(SupportBody("halfcylinder", g.a, g.b, "smaller"), seed)
        v2, e2 = fn(SupportBody("halfcylinder", g.a, g.b, "larger"), seed + 1)
        sigma = math.hypot(e1, e2)
        report[name] = {"first": v1, "second": v2, "sigma": sigma,
                        "passed": abs(v1 - v2) <= sigmas * sigma}
    report["passed"] = report["volume"]["passed"] and report["mean_width"]["passed"]
    return report
