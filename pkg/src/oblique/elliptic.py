"""Complete elliptic integrals and the largest-root functions xi and eta.

Parameter convention: ``mu`` is the coefficient of ``sin(theta)**2`` in the
integrand (the *parameter* m, not the modulus k = sqrt(m))::

    K(mu)     = int_0^{pi/2} (1 - mu sin^2 t)^(-1/2) dt
    E(mu)     = int_0^{pi/2} (1 - mu sin^2 t)^(1/2) dt
    Pi(nu,mu) = int_0^{pi/2} (1 - nu sin^2 t)^(-1) (1 - mu sin^2 t)^(-1/2) dt

scipy.special.ellipk uses the same convention; mpmath's ``ellippi(n, m)``
also does.  Many textbooks use k instead.

Every integral accepts an optional ``complement`` giving ``1 - mu`` directly.
Callers that can form ``1 - mu`` without cancellation (mu close to 1) should
pass it; it then takes precedence over ``mu`` in the numerics.
"""

from __future__ import annotations

import math

from .base import DomainError, check_finite
from .roots import solve_bracketed

_HALF_PI = 0.5 * math.pi
_AGM_TOL = 4 * 2.220446049250313e-16
_CARLSON_TOL = 1e-16


def _param(mu, complement):
    mu = check_finite("mu", mu)
    if complement is None:
        return mu, 1.0 - mu
    return mu, check_finite("complement", complement)


def _agm(mc: float, mu: float):
    """AGM of (1, sqrt(mc)) and the weighted sum of squared half-differences."""
    a, g = 1.0, math.sqrt(mc)
    s = 0.5 * mu
    weight = 0.5
    for _ in range(64):
        c = 0.5 * (a - g)
        a, g = 0.5 * (a + g), math.sqrt(a * g)
        weight *= 2.0
        s += weight * c * c
        # a and g may stall one ulp apart, so test against a few ulps
        if abs(a - g) <= _AGM_TOL * a:
            return a, s
    raise ArithmeticError("AGM failed to converge")  # pragma: no cover


def ellip_k(mu: float, complement: float | None = None) -> float:
    """Complete elliptic integral of the first kind, by the AGM."""
    mu, mc = _param(mu, complement)
    if mc <= 0:
        raise DomainError(f"ellip_k requires mu < 1, got {mu}")
    a, _ = _agm(mc, mu)
    return math.pi / (2.0 * a)


def ellip_e(mu: float, complement: float | None = None) -> float:
    """Complete elliptic integral of the second kind.

    Uses the Gauss-Legendre AGM duplication: ``E = K (1 - sum 2^(n-1) c_n^2)``.
    """
    mu, mc = _param(mu, complement)
    if mc < 0:
        raise DomainError(f"ellip_e requires mu <= 1, got {mu}")
    if mc == 0:
        return 1.0
    a, s = _agm(mc, mu)
    return math.pi / (2.0 * a) * (1.0 - s)


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral R_F; at most one argument may be zero."""
    if min(x, y, z) < 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError("carlson_rf needs non-negative arguments, at most one zero")
    a0 = (x + y + z) / 3.0
    x0, y0 = x, y
    q = (3.0 * _CARLSON_TOL) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    scale = 1.0
    while q * scale >= abs(a):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        scale *= 0.25
    dx = (a0 - x0) * scale / a
    dy = (a0 - y0) * scale / a
    dz = -dx - dy
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / math.sqrt(a)


def _rc_one(e: float) -> float:
    """R_C(1, 1 + e) for e > -1."""
    if abs(e) < 1e-4:
        return 1.0 - e / 3.0 + e * e / 5.0 - e ** 3 / 7.0 + e ** 4 / 9.0
    if e > 0:
        r = math.sqrt(e)
        return math.atan(r) / r
    r = math.sqrt(-e)
    return math.atanh(r) / r


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """Carlson's symmetric integral R_J for p > 0, x, y, z >= 0 (at most one zero)."""
    if min(x, y, z) < 0 or p <= 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError("carlson_rj needs x, y, z >= 0 (at most one zero) and p > 0")
    a0 = (x + y + z + 2.0 * p) / 5.0
    x0, y0, z0 = x, y, z
    delta = (p - x) * (p - y) * (p - z)
    q = (0.25 * _CARLSON_TOL) ** (-1.0 / 6.0) * max(
        abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    a = a0
    scale = 1.0
    acc = 0.0
    while q * scale >= abs(a):
        sx, sy, sz, sp = math.sqrt(x), math.sqrt(y), math.sqrt(z), math.sqrt(p)
        lam = sx * sy + sx * sz + sy * sz
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = scale ** 3 * delta / (d * d)
        acc += scale * _rc_one(e) / d
        x, y, z, p = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam), 0.25 * (p + lam)
        a = 0.25 * (a + lam)
        scale *= 0.25
    dx = (a0 - x0) * scale / a
    dy = (a0 - y0) * scale / a
    dz = (a0 - z0) * scale / a
    dp = -0.5 * (dx + dy + dz)
    e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp
    e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp ** 3
    e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp ** 3) * dp
    e5 = dx * dy * dz * dp * dp
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
              - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return scale * series / (a * math.sqrt(a)) + 6.0 * acc


def ellip_pi(nu: float, mu: float, complement: float | None = None) -> float:
    """Complete elliptic integral of the third kind via Carlson's R_F and R_J.

    ``Pi(nu, mu) = R_F(0, 1-mu, 1) + nu/3 R_J(0, 1-mu, 1, 1-nu)``.
    """
    nu = check_finite("nu", nu)
    mu, mc = _param(mu, complement)
    if mc <= 0:
        raise DomainError(f"ellip_pi requires mu < 1, got {mu}")
    if nu >= 1:
        raise DomainError(f"ellip_pi requires nu < 1, got {nu}")
    rf = carlson_rf(0.0, mc, 1.0)
    if nu == 0:
        return rf
    return rf + nu / 3.0 * carlson_rj(0.0, mc, 1.0, 1.0 - nu)


def _largest_root(g, upper: float, step: float, tol: float) -> float:
    """Largest zero of g on (-inf, upper], scanning down from ``upper``.

    ``g(upper) >= 0`` is assumed; the scan stops at the first sign change.
    """
    hi = upper
    ghi = g(hi)
    if ghi == 0:
        return hi
    k = 1
    while True:
        lo = upper - k * step
        glo = g(lo)
        if glo == 0:
            return lo
        if glo < 0:
            return solve_bracketed(g, lo, hi, tol).x
        hi, ghi = lo, glo
        k += 1


def xi(x: float) -> float:
    """Largest real y with ``x*y == cos(y)``; xi(1) is the Dottie number."""
    x = check_finite("x", x)
    if x <= 0:
        raise DomainError(f"xi requires x > 0, got {x}")
    return _largest_root(lambda y: x * y - math.cos(y), 1.0 / x,
                         min(0.01, 1.0 / (100.0 * x)), 1e-14)


def eta(x: float) -> float:
    """Largest real y with ``x*y == sin(y)``, for 0 < x < 1."""
    x = check_finite("x", x)
    if not 0 < x < 1:
        raise DomainError(f"eta requires 0 < x < 1, got {x}")
    return _largest_root(lambda y: x * y - math.sin(y), 1.0 / x,
                         min(0.01, 1.0 / (100.0 * x)), 1e-14)
